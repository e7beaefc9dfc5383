"""Interval score vectors and the classical and robust non-additive integrals.

Every integral evaluates its capacity on *threshold cuts*: at level ``t`` the
cut is ``({i : lo_i >= t}, {i : hi_i >= t})``.  Defining the cuts by value
rather than by position in a sorted order makes ties harmless: equal values
give identical cuts, and the zero-width terms vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .capacity import Capacity, IntervalCapacity
from .errors import LengthMismatch, NegativeScale, OutOfScale
from .lattice import QPair, pair_bits
from .mobius import MobiusRepresentation


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"interval needs lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def scale(self, a) -> "Interval":
        if a < 0:
            raise NegativeScale(f"scale factor must be nonnegative, got {a}")
        return Interval(a * self.lo, a * self.hi)

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class IntervalVector:
    """An alternative evaluated by one closed interval per criterion."""

    items: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    @classmethod
    def of(cls, *pairs) -> "IntervalVector":
        """Build from numbers (degenerate) or ``(lo, hi)`` pairs."""
        items = []
        for p in pairs:
            if isinstance(p, Interval):
                items.append(p)
            elif isinstance(p, (tuple, list)):
                items.append(Interval(*p))
            else:
                items.append(Interval(p, p))
        return cls(tuple(items))

    @classmethod
    def degenerate_of(cls, values: Iterable) -> "IntervalVector":
        return cls(tuple(Interval(v, v) for v in values))

    @classmethod
    def from_bounds(cls, lower: Sequence, upper: Sequence) -> "IntervalVector":
        if len(lower) != len(upper):
            raise LengthMismatch("lower and upper bounds differ in length")
        return cls(tuple(Interval(lo, hi) for lo, hi in zip(lower, upper)))

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def lower(self) -> tuple:
        return tuple(it.lo for it in self.items)

    def upper(self) -> tuple:
        return tuple(it.hi for it in self.items)

    def flat(self) -> tuple:
        """The 2n-vector of all lower bounds followed by all upper bounds."""
        return self.lower() + self.upper()

    def __add__(self, other: "IntervalVector") -> "IntervalVector":
        return iv_add(self, other)


def _same_length(x, y):
    if len(x) != len(y):
        raise LengthMismatch(f"vectors have {len(x)} and {len(y)} criteria")


def iv_add(x: IntervalVector, y: IntervalVector) -> IntervalVector:
    _same_length(x, y)
    return IntervalVector(tuple(a + b for a, b in zip(x, y)))


def iv_scale(a, x: IntervalVector) -> IntervalVector:
    return IntervalVector(tuple(it.scale(a) for it in x))


def iv_shift(x: IntervalVector, k) -> IntervalVector:
    """Add the constant ``k`` to every endpoint."""
    return IntervalVector(tuple(Interval(it.lo + k, it.hi + k) for it in x))


def iv_leq(x: IntervalVector, y: IntervalVector) -> bool:
    _same_length(x, y)
    return all(a.lo <= b.lo and a.hi <= b.hi for a, b in zip(x, y))


def comonotone(x: IntervalVector, y: IntervalVector) -> bool:
    """True when the flattened 2n-vectors can be sorted by a common permutation."""
    _same_length(x, y)
    fx, fy = x.flat(), y.flat()
    m = len(fx)
    return all((fx[i] - fx[j]) * (fy[i] - fy[j]) >= 0 for i in range(m) for j in range(i + 1, m))


def indicator(p: QPair) -> IntervalVector:
    items = []
    for i in range(p.n):
        if i in p.a:
            items.append(Interval(1, 1))
        elif i in p.b:
            items.append(Interval(0, 1))
        else:
            items.append(Interval(0, 0))
    return IntervalVector(tuple(items))


def _check_len(n: int, size: int):
    if n != size:
        raise LengthMismatch(f"expected {n} criteria, got {size}")


def _cut(values: Sequence, t) -> int:
    bits = 0
    for i, v in enumerate(values):
        if v >= t:
            bits |= 1 << i
    return bits


def pair_cut(x: IntervalVector, t) -> tuple[int, int]:
    """Bitmasks of ``{i : lo_i >= t}`` and ``{i : hi_i >= t}``."""
    return _cut(x.lower(), t), _cut(x.upper(), t)


# -- classical integrals -------------------------------------------------------


def choquet(x: Sequence, nu: Capacity):
    """Choquet integral of a real vector (negative values allowed)."""
    _check_len(nu.n, len(x))
    levels = sorted(set(x))
    total = levels[0]
    for prev, t in zip(levels, levels[1:]):
        total += (t - prev) * nu(_cut(x, t))
    return total


def _check_scale(values: Iterable, top):
    for v in values:
        if v < 0 or v > top:
            raise OutOfScale(f"value {v} outside the scale [0, {top}]")


def sugeno(x: Sequence, nu: Capacity):
    """Sugeno integral, max over levels of min(level, capacity of the cut)."""
    _check_len(nu.n, len(x))
    _check_scale(x, nu.top)
    return max(min(t, nu(_cut(x, t))) for t in set(x))


def sugeno_subsets(x: Sequence, nu: Capacity):
    """Sugeno integral as max over all subsets A of min(nu(A), min of x on A)."""
    _check_len(nu.n, len(x))
    _check_scale(x, nu.top)
    best = nu(0)
    for mask in range(1, 1 << nu.n):
        v = min([nu(mask)] + [x[i] for i in range(nu.n) if mask >> i & 1])
        best = max(best, v)
    return best


def _ratio(v, top):
    if isinstance(v, (int, Fraction)) and isinstance(top, (int, Fraction)):
        return Fraction(v) / Fraction(top)
    return v / top


def shilkret(x: Sequence, nu: Capacity, scale=None):
    """Shilkret integral on the normalized scale; the result lies in [0, 1].

    Inputs in ``[0, scale]`` (default ``nu.top``) are divided by ``scale``;
    capacity values are divided by ``nu.top``.
    """
    _check_len(nu.n, len(x))
    scale = nu.top if scale is None else scale
    _check_scale(x, scale)
    return max(_ratio(v, scale) * _ratio(nu(_cut(x, v)), nu.top) for v in x)


# -- robust integrals ----------------------------------------------------------


def rci(x: IntervalVector, mu: IntervalCapacity):
    """Robust Choquet integral: sorted-sum form over the 2n endpoints."""
    _check_len(mu.n, len(x))
    lower, upper = x.lower(), x.upper()
    levels = sorted(set(lower) | set(upper))
    total = levels[0]
    for prev, t in zip(levels, levels[1:]):
        total += (t - prev) * mu.at(_cut(lower, t), _cut(upper, t))
    return total


def rci_riemann(x: IntervalVector, mu: IntervalCapacity, samples: int | None = None):
    """Integral form of the robust Choquet integral.

    With ``samples=None`` the step integrand is integrated exactly, one
    segment between consecutive endpoints at a time, evaluating the cut at
    the segment midpoint.  With ``samples=k`` it instead returns the midpoint
    Riemann sum on ``k`` equal subintervals of ``[min lo, max hi]`` (an
    approximation whose error is at most ``top * width * 2n / k``).
    """
    _check_len(mu.n, len(x))
    lower, upper = x.lower(), x.upper()
    start, stop = min(lower), max(upper)
    if samples is None:
        levels = sorted(set(lower) | set(upper))
        total = start
        for u, v in zip(levels, levels[1:]):
            mid = (u + v) / 2
            total += (v - u) * mu.at(_cut(lower, mid), _cut(upper, mid))
        return total
    if samples < 1:
        raise ValueError("samples must be >= 1")
    width = (stop - start) / samples
    total = 0
    for k in range(samples):
        t = start + (k + 0.5) * width
        total += mu.at(_cut(lower, t), _cut(upper, t))
    return start + width * total


def _meet(lower: Sequence, upper: Sequence, a: int, b: int):
    vals = [lower[i] for i in range(len(lower)) if a >> i & 1]
    vals += [upper[i] for i in range(len(upper)) if b >> i & 1]
    return min(vals) if vals else None


def rci_mobius(x: IntervalVector, m: MobiusRepresentation):
    """Robust Choquet integral from the Möbius inverse of the capacity.

    Each pair contributes ``m(A,B) * min(min lo over A, min hi over B)``.
    The pair (∅,∅) has an empty minimum and ``m(∅,∅) = 0``, so it is skipped.
    """
    _check_len(m.n, len(x))
    lower, upper = x.lower(), x.upper()
    total = 0
    for (a, b), w in zip(pair_bits(m.n), m.values):
        if b == 0 or w == 0:
            continue
        total += w * _meet(lower, upper, a, b)
    return total


def _check_robust_scale(x: IntervalVector, top):
    _check_scale(x.flat(), top)


def rsi(x: IntervalVector, mu: IntervalCapacity):
    """Robust Sugeno integral as a max-min over all 3^n pairs."""
    _check_len(mu.n, len(x))
    _check_robust_scale(x, mu.top)
    lower, upper = x.lower(), x.upper()
    best = mu.values[0]
    for (a, b), w in zip(pair_bits(mu.n), mu.values):
        meet = _meet(lower, upper, a, b & ~a)
        best = max(best, w if meet is None else min(meet, w))
    return best


def rsi_sorted(x: IntervalVector, mu: IntervalCapacity):
    """Robust Sugeno integral over the 2n sorted endpoints."""
    _check_len(mu.n, len(x))
    _check_robust_scale(x, mu.top)
    lower, upper = x.lower(), x.upper()
    return max(min(t, mu.at(_cut(lower, t), _cut(upper, t))) for t in set(lower) | set(upper))


def robust_shilkret(x: IntervalVector, mu: IntervalCapacity, scale=None):
    """Robust Shilkret integral on the normalized scale; the result lies in [0, 1]."""
    _check_len(mu.n, len(x))
    scale = mu.top if scale is None else scale
    _check_robust_scale(x, scale)
    lower, upper = x.lower(), x.upper()
    best = 0
    for (a, b), w in zip(pair_bits(mu.n), mu.values):
        if b == 0:
            continue
        best = max(best, _ratio(_meet(lower, upper, a, b), scale) * _ratio(w, mu.top))
    return best

