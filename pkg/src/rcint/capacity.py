"""Interval capacities on the pair lattice and classical capacities on 2^N.

Values may be ints, floats or :class:`fractions.Fraction`.  Tables made only
of ints and Fractions are validated exactly; as soon as a float is present
the checks allow an absolute slack of ``1e-9 * top``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import BadBoundary, DegenerateAnchor, NotMonotone, NotSeparable, WrongLength
from .lattice import QPair, chain_covers, check_n, code_of, pair_bits, q_from_index

EPS_SEP = 1e-9
EPS_FLOAT = 1e-9


def tolerance(values: Sequence, top) -> float:
    """Absolute slack for comparisons: zero for exact tables."""
    if all(isinstance(v, Rational) for v in values) and isinstance(top, Rational):
        return 0
    return EPS_FLOAT * float(top)


def _check_top(top):
    if not top > 0:
        raise BadBoundary(f"scale top must be positive, got {top!r}")


@dataclass(frozen=True)
class Capacity:
    """A monotone set function on 2^N with ``v(empty) = 0`` and ``v(N) = top``.

    ``values[mask]`` is the value of the set whose bitmask is ``mask``.
    """

    n: int
    top: object
    values: tuple

    def __post_init__(self):
        check_n(self.n)
        _check_top(self.top)
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != 1 << self.n:
            raise WrongLength(f"expected {1 << self.n} values for n={self.n}, got {len(self.values)}")
        tol = tolerance(self.values, self.top)
        full = (1 << self.n) - 1
        if abs(self.values[0]) > tol or abs(self.values[full] - self.top) > tol:
            raise BadBoundary(
                f"capacity must satisfy v(empty)=0 and v(N)={self.top}; "
                f"got {self.values[0]} and {self.values[full]}"
            )
        for mask in range(1 << self.n):
            for i in range(self.n):
                if mask >> i & 1 and self.values[mask ^ (1 << i)] > self.values[mask] + tol:
                    raise NotMonotone(
                        f"v({_set_str(mask ^ (1 << i))})={self.values[mask ^ (1 << i)]} > "
                        f"v({_set_str(mask)})={self.values[mask]}",
                        lower=mask ^ (1 << i),
                        upper=mask,
                    )

    def __call__(self, mask: int):
        return self.values[mask]


def _set_str(mask: int) -> str:
    return "{" + ",".join(str(i) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


@dataclass(frozen=True)
class IntervalCapacity:
    """Monotone function on the pairs (A, B) with ``mu(∅,∅) = 0`` and ``mu(N,N) = top``.

    ``values`` is indexed by the dense pair index (see :mod:`rcint.lattice`).
    Validation checks the two kinds of covering move (drop one criterion from
    A, or drop one criterion of B \\ A from B); monotonicity along those edges
    implies it for every comparable pair.
    """

    n: int
    top: object
    values: tuple

    def __post_init__(self):
        check_n(self.n)
        _check_top(self.top)
        object.__setattr__(self, "values", tuple(self.values))
        size = 3**self.n
        if len(self.values) != size:
            raise WrongLength(f"expected {size} values for n={self.n}, got {len(self.values)}")
        tol = tolerance(self.values, self.top)
        vals = self.values
        if abs(vals[0]) > tol or abs(vals[size - 1] - self.top) > tol:
            raise BadBoundary(
                f"interval capacity must satisfy mu(∅,∅)=0 and mu(N,N)={self.top}; "
                f"got {vals[0]} and {vals[size - 1]}"
            )
        for lo, hi in chain_covers(self.n, 3):
            if vals[lo] > vals[hi] + tol:
                p, q = q_from_index(lo, self.n), q_from_index(hi, self.n)
                raise NotMonotone(
                    f"mu({p.render()})={vals[lo]} > mu({q.render()})={vals[hi]}",
                    lower=p,
                    upper=q,
                )

    def __getitem__(self, pair: QPair):
        return self.values[code_of(pair.a.bits, pair.b.bits, self.n)]

    def at(self, a: int, b: int):
        """Value at the pair given by bitmasks."""
        return self.values[code_of(a, b, self.n)]


@dataclass(frozen=True)
class SeparableDecomposition:
    """``mu(A, B) = alpha * lower(A) + (1 - alpha) * upper(B)``."""

    alpha: object
    lower_cap: Capacity
    upper_cap: Capacity

    def __post_init__(self):
        if not 0 <= self.alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        if self.lower_cap.n != self.upper_cap.n or self.lower_cap.top != self.upper_cap.top:
            raise ValueError("lower and upper capacities must share n and top")


def interval_capacity_new(n: int, top, values: Sequence) -> IntervalCapacity:
    return IntervalCapacity(n, top, tuple(values))


def diagonal_capacity(mu: IntervalCapacity) -> Capacity:
    return Capacity(mu.n, mu.top, tuple(mu.at(a, a) for a in range(1 << mu.n)))


def _div(x, y):
    if isinstance(x, Rational) and isinstance(y, Rational):
        return Fraction(x) / Fraction(y)
    return x / y


def lower_upper_derived(mu: IntervalCapacity) -> tuple[Capacity, Capacity]:
    """The two capacities read off the pairs (A, N) and (∅, B), rescaled to [0, top]."""
    full = (1 << mu.n) - 1
    anchor = mu.at(0, full)
    if anchor == 0 or anchor == mu.top:
        raise DegenerateAnchor(f"mu(∅,N)={anchor} must differ from 0 and {mu.top}")
    span = mu.top - anchor
    lower = [_div(mu.top * (mu.at(a, full) - anchor), span) for a in range(1 << mu.n)]
    upper = [_div(mu.top * mu.at(0, b), anchor) for b in range(1 << mu.n)]
    # pin endpoints so float rounding cannot break the boundary check
    lower[0], lower[full] = 0 * mu.top, mu.top
    upper[0], upper[full] = 0 * mu.top, mu.top
    return Capacity(mu.n, mu.top, tuple(lower)), Capacity(mu.n, mu.top, tuple(upper))


def separable_from(dec: SeparableDecomposition) -> IntervalCapacity:
    lo, up, alpha = dec.lower_cap, dec.upper_cap, dec.alpha
    n = lo.n
    values = [alpha * lo(a) + (1 - alpha) * up(b) for a, b in pair_bits(n)]
    values[0], values[-1] = 0 * lo.top, lo.top
    return IntervalCapacity(n, lo.top, tuple(values))


def separability_violations(mu: IntervalCapacity, tol=None) -> list[tuple[int, int, int, int]]:
    """All quadruples ``(A, A', B, B')`` (as bitmasks) breaking difference independence.

    The condition is ``mu(A,B) - mu(A',B) == mu(A,B') - mu(A',B')`` whenever
    ``A ∪ A' ⊆ B ∩ B'``.  The enumeration is exhaustive (7^n quadruples).
    """
    if tol is None:
        tol = EPS_SEP if tolerance(mu.values, mu.top) else 0
    n = mu.n
    out = []
    for b in range(1 << n):
        for b2 in range(1 << n):
            common = b & b2
            sub_a = common
            while True:
                sub_a2 = common
                while True:
                    lhs = mu.at(sub_a, b) - mu.at(sub_a2, b)
                    rhs = mu.at(sub_a, b2) - mu.at(sub_a2, b2)
                    if abs(lhs - rhs) > tol:
                        out.append((sub_a, sub_a2, b, b2))
                    if sub_a2 == 0:
                        break
                    sub_a2 = (sub_a2 - 1) & common
                if sub_a == 0:
                    break
                sub_a = (sub_a - 1) & common
    return out


def _separable_reduced(mu: IntervalCapacity, tol) -> bool:
    # equivalent O(3^n) form: mu(A,B) = mu(A,N) - mu(∅,N) + mu(∅,B) on every pair
    full = (1 << mu.n) - 1
    anchor = mu.at(0, full)
    return all(
        abs(mu.at(a, b) - (mu.at(a, full) - anchor + mu.at(0, b))) <= tol for a, b in pair_bits(mu.n)
    )


def is_separable(mu: IntervalCapacity) -> bool:
    tol = EPS_SEP if tolerance(mu.values, mu.top) else 0
    if mu.n <= 8:
        return not separability_violations(mu, tol)
    return _separable_reduced(mu, tol)


def decompose_separable(mu: IntervalCapacity) -> SeparableDecomposition:
    tol = EPS_SEP if tolerance(mu.values, mu.top) else 0
    if not _separable_reduced(mu, tol):
        raise NotSeparable("mu(A,B) - mu(∅,B) depends on B for some A")
    n, top = mu.n, mu.top
    full = (1 << n) - 1
    anchor = mu.at(0, full)
    diag = diagonal_capacity(mu)
    if anchor == 0:
        lower = Capacity(n, top, tuple(mu.at(a, full) for a in range(1 << n)))
        return SeparableDecomposition(1, lower, diag)
    if anchor == top:
        upper = Capacity(n, top, tuple(mu.at(0, b) for b in range(1 << n)))
        return SeparableDecomposition(0, diag, upper)
    lower, upper = lower_upper_derived(mu)
    return SeparableDecomposition(1 - _div(anchor, top), lower, upper)
