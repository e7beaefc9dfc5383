"""Bipolar, level-dependent, concave and m-point robust Choquet integrals.

The bipolar and m-point lattices are, like the pair lattice, products of
chains, one chain per criterion:

* bipolar quadruples (A+, B+, A-, B-): per criterion the states are
  sure-negative < possibly-negative < neutral < possibly-positive <
  sure-positive, coded 0..4;
* m-point chains A_1 ⊆ ... ⊆ A_m: the state of a criterion is the number of
  sets containing it, coded 0..m.  For m = 2 the codes coincide with the pair
  index and for m = 1 with the subset bitmask.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .capacity import IntervalCapacity, tolerance
from .errors import BadBoundary, LengthMismatch, NegativeInput, NotChainOrdered, NotMonotone, OutOfDomain, OutOfRange, WrongLength
from .integrals import IntervalVector, _cut
from .lattice import CriterionSet, QPair, chain_covers, chain_digits, check_n, pair_bits
from .lpsolve import lp_maximize, RationalLP

SURE_NEG, MAYBE_NEG, NEUTRAL, MAYBE_POS, SURE_POS = range(5)


# -- bipolar ---------------------------------------------------------------------


@dataclass(frozen=True)
class BipolarQuad:
    """(A+, B+, A-, B-) with A+ ⊆ B+, B- ⊆ A- and B+ disjoint from A-.

    A+ / B+ are the sure / possible positive coalitions, A- / B- the possible
    / sure negative ones.
    """

    a_pos: CriterionSet
    b_pos: CriterionSet
    a_neg: CriterionSet
    b_neg: CriterionSet

    def __post_init__(self):
        if not self.a_pos.issubset(self.b_pos):
            raise ValueError("A+ must be a subset of B+")
        if not self.b_neg.issubset(self.a_neg):
            raise ValueError("B- must be a subset of A-")
        if (self.b_pos & self.a_neg).bits:
            raise ValueError("B+ and A- must be disjoint")

    @property
    def n(self) -> int:
        return self.a_pos.n

    def code(self) -> int:
        return _bipolar_code(self.a_pos.bits, self.b_pos.bits, self.a_neg.bits, self.b_neg.bits, self.n)

    @classmethod
    def from_code(cls, code: int, n: int) -> "BipolarQuad":
        sets = [0, 0, 0, 0]
        for i, d in enumerate(chain_digits(code, n, 5)):
            for k, member in enumerate(_STATE_MEMBERSHIP[d]):
                if member:
                    sets[k] |= 1 << i
        return cls(*(CriterionSet(s, n) for s in sets))


# membership of a criterion in (A+, B+, A-, B-) for each state
_STATE_MEMBERSHIP = {
    SURE_NEG: (0, 0, 1, 1),
    MAYBE_NEG: (0, 0, 1, 0),
    NEUTRAL: (0, 0, 0, 0),
    MAYBE_POS: (0, 1, 0, 0),
    SURE_POS: (1, 1, 0, 0),
}


def _state(i: int, a_pos: int, b_pos: int, a_neg: int, b_neg: int) -> int:
    if a_pos >> i & 1:
        return SURE_POS
    if b_pos >> i & 1:
        return MAYBE_POS
    if b_neg >> i & 1:
        return SURE_NEG
    if a_neg >> i & 1:
        return MAYBE_NEG
    return NEUTRAL


def _bipolar_code(a_pos, b_pos, a_neg, b_neg, n) -> int:
    code = 0
    for i in reversed(range(n)):
        code = code * 5 + _state(i, a_pos, b_pos, a_neg, b_neg)
    return code


def _neutral_code(n: int) -> int:
    return sum(2 * 5**i for i in range(n))


@dataclass(frozen=True)
class BipolarIntervalCapacity:
    """Monotone map from quadruples to [-1, 1], dense over the 5^n states.

    Boundary values: 0 at (∅,∅,∅,∅), 1 at (N,N,∅,∅), -1 at (∅,∅,N,N).
    """

    n: int
    values: tuple

    def __post_init__(self):
        check_n(self.n)
        object.__setattr__(self, "values", tuple(self.values))
        vals = self.values
        if len(vals) != 5**self.n:
            raise WrongLength(f"expected {5 ** self.n} values for n={self.n}, got {len(vals)}")
        tol = tolerance(vals, 1)
        if abs(vals[_neutral_code(self.n)]) > tol or abs(vals[-1] - 1) > tol or abs(vals[0] + 1) > tol:
            raise BadBoundary("bipolar capacity needs 0 at (∅,∅,∅,∅), 1 at (N,N,∅,∅), -1 at (∅,∅,N,N)")
        for lo, hi in chain_covers(self.n, 5):
            if vals[lo] > vals[hi] + tol:
                raise NotMonotone(
                    f"mu({_quad_str(lo, self.n)})={vals[lo]} > mu({_quad_str(hi, self.n)})={vals[hi]}",
                    lower=BipolarQuad.from_code(lo, self.n),
                    upper=BipolarQuad.from_code(hi, self.n),
                )

    def __getitem__(self, quad: BipolarQuad):
        return self.values[quad.code()]


def _quad_str(code: int, n: int) -> str:
    q = BipolarQuad.from_code(code, n)
    return ",".join(s.render() for s in (q.a_pos, q.b_pos, q.a_neg, q.b_neg))


def _unit(v, top):
    if isinstance(v, (int, Fraction)) and isinstance(top, (int, Fraction)):
        return Fraction(v) / Fraction(top)
    return v / top


def bipolar_from_interval(mu: IntervalCapacity) -> BipolarIntervalCapacity:
    """Symmetric bipolar capacity ``mu(A+,B+)/top - mu(B-,A-)/top``.

    It agrees with ``mu`` (rescaled to [0, 1]) on quadruples with empty
    negative part and changes sign under the reflection that swaps the
    positive and negative roles.
    """
    n = mu.n
    values = []
    for code in range(5**n):
        q = BipolarQuad.from_code(code, n)
        values.append(_unit(mu.at(q.a_pos.bits, q.b_pos.bits), mu.top) - _unit(mu.at(q.b_neg.bits, q.a_neg.bits), mu.top))
    return BipolarIntervalCapacity(n, tuple(values))


def bipolar_rci(x: IntervalVector, mu: BipolarIntervalCapacity):
    """Bipolar robust Choquet integral, integrated over t in (0, inf).

    At level t the positive cuts are ``{lo >= t}``, ``{hi >= t}`` and the
    negative cuts ``{lo <= -t}``, ``{hi <= -t}``.  Intervals with
    ``lo < 0 < hi`` would be possibly positive and possibly negative at once,
    which no quadruple represents, so they are rejected.
    """
    if len(x) != mu.n:
        raise LengthMismatch(f"expected {mu.n} criteria, got {len(x)}")
    lower, upper = x.lower(), x.upper()
    for i, (lo, hi) in enumerate(zip(lower, upper)):
        if lo < 0 < hi:
            raise OutOfDomain(f"criterion {i}: interval [{lo}, {hi}] straddles zero")
    levels = sorted({abs(v) for v in lower + upper} | {0})
    neg_lower = [-v for v in lower]
    neg_upper = [-v for v in upper]
    total = 0
    for prev, t in zip(levels, levels[1:]):
        a_pos, b_pos = _cut(lower, t), _cut(upper, t)
        a_neg, b_neg = _cut(neg_lower, t), _cut(neg_upper, t)
        total += (t - prev) * mu.values[_bipolar_code(a_pos, b_pos, a_neg, b_neg, mu.n)]
    return total


# -- level dependent -----------------------------------------------------------


@dataclass(frozen=True)
class LevelDependentCapacity:
    """Piecewise-constant family of interval capacities indexed by the level t.

    ``tables[j]`` applies on ``(uppers[j-1], uppers[j]]``, with
    ``uppers[-1]`` read as ``lower`` for the first table.  The last upper
    bound may be ``math.inf``.
    """

    n: int
    uppers: tuple
    tables: tuple
    lower: object = -math.inf

    def __post_init__(self):
        object.__setattr__(self, "uppers", tuple(self.uppers))
        object.__setattr__(self, "tables", tuple(self.tables))
        if not self.tables or len(self.tables) != len(self.uppers):
            raise WrongLength("need one upper breakpoint per table")
        bounds = (self.lower,) + self.uppers
        if any(u >= v for u, v in zip(bounds, bounds[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        tops = {t.top for t in self.tables}
        if any(t.n != self.n for t in self.tables) or len(tops) != 1:
            raise ValueError("all tables must share n and top")

    @property
    def top(self):
        return self.tables[0].top

    def table_at(self, t) -> IntervalCapacity:
        if not self.lower < t <= self.uppers[-1]:
            raise OutOfDomain(f"level {t} outside ({self.lower}, {self.uppers[-1]}]")
        return self.tables[bisect.bisect_left(self.uppers, t)]

    @classmethod
    def constant(cls, mu: IntervalCapacity) -> "LevelDependentCapacity":
        return cls(mu.n, (math.inf,), (mu,))


def rci_level_dependent(x: IntervalVector, mu: LevelDependentCapacity):
    if len(x) != mu.n:
        raise LengthMismatch(f"expected {mu.n} criteria, got {len(x)}")
    lower, upper = x.lower(), x.upper()
    start, stop = min(lower), max(upper)
    if start < mu.lower or stop > mu.uppers[-1]:
        raise OutOfDomain(f"evaluations span [{start}, {stop}], capacity covers ({mu.lower}, {mu.uppers[-1]}]")
    cuts = set(lower) | set(upper) | {u for u in mu.uppers if start < u < stop}
    levels = sorted(cuts)
    total = start
    for u, v in zip(levels, levels[1:]):
        mid = (u + v) / 2
        total += (v - u) * mu.table_at(mid).at(_cut(lower, mid), _cut(upper, mid))
    return total


# -- concave -------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Nonnegative weights on pairs; sums the weighted indicators back to a vector."""

    n: int
    terms: tuple

    def resum(self) -> IntervalVector:
        lo = [0] * self.n
        hi = [0] * self.n
        for pair, w in self.terms:
            for i in pair.a:
                lo[i] += w
            for i in pair.b:
                hi[i] += w
        return IntervalVector.from_bounds(lo, hi)

    def objective(self, mu: IntervalCapacity):
        return sum(w * mu[pair] for pair, w in self.terms)


def concave_lp(x: IntervalVector, mu: IntervalCapacity) -> RationalLP:
    """Equality-form LP over the 3^n - 1 nonempty pairs.

    Row ``i`` fixes the total weight of pairs with ``i`` in A to ``lo_i``;
    row ``n + i`` fixes the weight of pairs with ``i`` in B to ``hi_i``.
    """
    n = mu.n
    pairs = pair_bits(n)[1:]
    c = list(mu.values[1:])
    rows = [[1 if a >> i & 1 else 0 for a, _ in pairs] for i in range(n)]
    rows += [[1 if b >> i & 1 else 0 for _, b in pairs] for i in range(n)]
    return RationalLP(c, rows, list(x.lower()) + list(x.upper()))


def concave_robust(x: IntervalVector, mu: IntervalCapacity, exact: bool = True):
    """Robust concave integral: best capacity-weighted decomposition of x into indicators.

    Returns ``(value, Decomposition)``.
    """
    if len(x) != mu.n:
        raise LengthMismatch(f"expected {mu.n} criteria, got {len(x)}")
    if any(lo < 0 for lo in x.lower()):
        raise NegativeInput("concave integral needs nonnegative intervals")
    lp = concave_lp(x, mu)
    value, weights = lp_maximize(lp, exact=exact)
    pairs = pair_bits(mu.n)[1:]
    terms = tuple((QPair.from_bits(a, b, mu.n), w) for (a, b), w in zip(pairs, weights) if w)
    return value, Decomposition(mu.n, terms)


# -- m-point -------------------------------------------------------------------


@dataclass(frozen=True)
class MPointVector:
    """``points[i]`` holds the m nondecreasing evaluations of criterion i."""

    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise WrongLength("need at least one criterion")
        m = len(pts[0])
        if m < 1 or any(len(p) != m for p in pts):
            raise WrongLength("every criterion needs the same positive number of points")
        for i, p in enumerate(pts):
            if any(u > v for u, v in zip(p, p[1:])):
                raise NotChainOrdered(f"criterion {i}: points {p} are not nondecreasing")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.points[0])

    @classmethod
    def from_intervals(cls, x: IntervalVector) -> "MPointVector":
        return cls(tuple((it.lo, it.hi) for it in x))


@dataclass(frozen=True)
class MPointCapacity:
    """Monotone map on chains A_1 ⊆ ... ⊆ A_m, dense over (m+1)^n codes."""

    n: int
    m: int
    top: object
    values: tuple

    def __post_init__(self):
        check_n(self.n)
        if self.m < 1:
            raise OutOfRange("m must be >= 1")
        object.__setattr__(self, "values", tuple(self.values))
        base = self.m + 1
        vals = self.values
        if len(vals) != base**self.n:
            raise WrongLength(f"expected {base ** self.n} values, got {len(vals)}")
        tol = tolerance(vals, self.top)
        if abs(vals[0]) > tol or abs(vals[-1] - self.top) > tol:
            raise BadBoundary(f"m-interval capacity needs 0 at the bottom and {self.top} at the top")
        for lo, hi in chain_covers(self.n, base):
            if vals[lo] > vals[hi] + tol:
                raise NotMonotone(f"value at chain code {lo} exceeds value at code {hi}", lower=lo, upper=hi)

    def at_sets(self, sets: Sequence[int]):
        """Value at the chain given as m bitmasks (must be nested)."""
        if len(sets) != self.m:
            raise WrongLength(f"expected {self.m} sets")
        if any(s & ~t for s, t in zip(sets, sets[1:])):
            raise NotChainOrdered("sets must be nested A_1 ⊆ ... ⊆ A_m")
        return self.values[self._code(sets)]

    def _code(self, sets: Sequence[int]) -> int:
        code = 0
        for i in reversed(range(self.n)):
            code = code * (self.m + 1) + sum(s >> i & 1 for s in sets)
        return code

    @classmethod
    def from_interval_capacity(cls, mu: IntervalCapacity) -> "MPointCapacity":
        return cls(mu.n, 2, mu.top, mu.values)


def mpoint_rci(x: MPointVector, mu: MPointCapacity):
    if x.n != mu.n or x.m != mu.m:
        raise LengthMismatch(f"vector is {x.n}x{x.m}, capacity expects {mu.n}x{mu.m}")
    columns = [tuple(p[j] for p in x.points) for j in range(x.m)]
    levels = sorted({v for p in x.points for v in p})
    total = levels[0]
    for prev, t in zip(levels, levels[1:]):
        total += (t - prev) * mu.values[mu._code([_cut(col, t) for col in columns])]
    return total
