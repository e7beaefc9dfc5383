"""Möbius and zeta transforms on the pair lattice and on 2^N.

Three routes compute the Möbius inverse of a table over the pairs:

* ``"chain"`` (default): the lattice is a product of 3-element chains, so the
  inverse is a per-criterion finite difference, O(n 3^n).
* ``"closed"``: the explicit alternating double sum over ``X ⊆ A`` and the
  lower set of ``(A \\ X, B \\ X)``.  Exponentially many terms; meant for
  n <= 5 and for cross-checking.
* ``"recursive"``: ``m(A,B) = f(A,B) - sum of m below (A,B)``, visiting pairs
  in a linear extension of the pair order.  O(9^n).

All routes are exact on ints and Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .capacity import Capacity, IntervalCapacity, tolerance
from .errors import WrongLength
from .lattice import check_n, code_of, lower_set_differences, lower_set_sums, members, pair_bits

EPS_MOB = 1e-9


@dataclass(frozen=True)
class MobiusRepresentation:
    """Möbius inverse ``m`` of an interval capacity; entries may be negative."""

    n: int
    top: object
    values: tuple

    def __post_init__(self):
        check_n(self.n)
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != 3**self.n:
            raise WrongLength(f"expected {3 ** self.n} values for n={self.n}, got {len(self.values)}")

    def at(self, a: int, b: int):
        return self.values[code_of(a, b, self.n)]


@dataclass
class MobiusReport:
    """Outcome of :func:`is_interval_capacity_mobius`.

    ``violations`` holds tuples ``(condition, witness)``; for conditions 3 and
    4 the witness is ``(criterion, A_bits, B_bits)``.
    """

    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _table(f) -> tuple[int, Sequence]:
    if isinstance(f, (IntervalCapacity, MobiusRepresentation)):
        return f.n, f.values
    values = list(f)
    n = 0
    while 3**n < len(values):
        n += 1
    if 3**n != len(values):
        raise WrongLength(f"table length {len(values)} is not a power of 3")
    return check_n(n), values


def zeta(g) -> list:
    """``f(A,B) = sum of g(C,D) over (C,D) ⊆ (A,B)``."""
    n, values = _table(g)
    return lower_set_sums(values, n, 3)


def _lower_pairs(a: int, b: int):
    """All pairs (C, D) with C ⊆ a and C ⊆ D ⊆ b, as bitmasks."""
    d = b
    while True:
        c = d & a
        while True:
            yield c, d
            if c == 0:
                break
            c = (c - 1) & d & a
        if d == 0:
            break
        d = (d - 1) & b


def _popcount(x: int) -> int:
    return bin(x).count("1")


def mobius_closed_form(values: Sequence, n: int) -> list:
    out = []
    for a, b in pair_bits(n):
        free = _popcount(b & ~a)
        total = 0
        x = a
        while True:
            inner = 0
            for c, d in _lower_pairs(a & ~x, b & ~x):
                term = values[code_of(c, d, n)]
                inner += term if (free - _popcount(d & ~c)) % 2 == 0 else -term
            total += inner if _popcount(x) % 2 == 0 else -inner
            if x == 0:
                break
            x = (x - 1) & a
        out.append(total)
    return out


def mobius_recursive(values: Sequence, n: int) -> list:
    pairs = pair_bits(n)
    # (|B|, |A|) ascending is a linear extension of the pair order
    order = sorted(range(len(pairs)), key=lambda k: (_popcount(pairs[k][1]), _popcount(pairs[k][0])))
    m = [None] * len(pairs)
    for k in order:
        a, b = pairs[k]
        acc = values[k]
        for c, d in _lower_pairs(a, b):
            if (c, d) != (a, b):
                acc -= m[code_of(c, d, n)]
        m[k] = acc
    return m


def mobius(f, method: str = "chain", top=None) -> MobiusRepresentation:
    """Möbius inverse of an interval capacity or of a raw table over the pairs."""
    n, values = _table(f)
    if method == "chain":
        m = lower_set_differences(values, n, 3)
    elif method == "closed":
        m = mobius_closed_form(values, n)
    elif method == "recursive":
        m = mobius_recursive(values, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    if top is None:
        top = getattr(f, "top", values[-1])
    return MobiusRepresentation(n, top, tuple(m))


def is_interval_capacity_mobius(m: MobiusRepresentation) -> MobiusReport:
    """Check the four conditions characterizing Möbius inverses of interval capacities.

    1. ``m(∅,∅) = 0``;  2. the entries sum to ``top``;
    3. for ``a ∈ A ⊆ B``: the sum of ``m(C,D)`` over ``a ∈ C ⊆ A``, ``C ⊆ D ⊆ B`` is >= 0;
    4. for ``b ∈ B ⊇ A``: the sum of ``m(C,D)`` over ``b ∈ D ⊆ B``, ``C ⊆ A ∩ D`` is >= 0.

    Conditions 3 and 4 are the increments of the capacity along the two
    kinds of covering move.
    """
    n, vals, top = m.n, m.values, m.top
    tol = EPS_MOB * float(top) if tolerance(vals, top) else 0
    report = MobiusReport(True)
    if abs(vals[0]) > tol:
        report.violations.append((1, vals[0]))
    total = sum(vals)
    if abs(total - top) > tol:
        report.violations.append((2, total))
    for a, b in pair_bits(n):
        for i in members(a):
            s = 0
            for c, d in _lower_pairs(a, b):
                if c >> i & 1:
                    s += vals[code_of(c, d, n)]
            if s < -tol:
                report.violations.append((3, (i, a, b)))
        for i in members(b):
            s = 0
            for c, d in _lower_pairs(a, b):
                if d >> i & 1:
                    s += vals[code_of(c, d, n)]
            if s < -tol:
                report.violations.append((4, (i, a, b)))
    report.ok = not report.violations
    return report


def mobius_classical(f) -> list:
    """``g(B) = sum over D ⊆ B of (-1)^|B \\ D| f(D)`` on 2^N."""
    values = list(f.values if isinstance(f, Capacity) else f)
    size = len(values)
    g = []
    for b in range(size):
        acc = 0
        d = b
        while True:
            acc += values[d] if _popcount(b & ~d) % 2 == 0 else -values[d]
            if d == 0:
                break
            d = (d - 1) & b
        g.append(acc)
    return g


def zeta_classical(g: Sequence) -> list:
    """``f(B) = sum over D ⊆ B of g(D)`` on 2^N."""
    out = list(g)
    size = len(out)
    step = 1
    while step < size:
        for mask in range(size):
            if mask & step:
                out[mask] += out[mask ^ step]
        step <<= 1
    return out
