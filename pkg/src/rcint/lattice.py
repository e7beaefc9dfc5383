"""Criteria sets and the lattice of nested pairs (A, B), A ⊆ B ⊆ N.

Criteria are numbered ``0 .. n-1`` and sets are stored as bitmasks.  Every
pair (A, B) has a dense index in ``[0, 3**n)``: base-3 digit ``i`` is 2 when
``i`` is in A, 1 when it is in B but not A, and 0 when it is outside B.

Per criterion the three states form a chain ``0 < 1 < 2`` under the pair
order, so the lattice is a product of chains and the pair order coincides
with digit-wise comparison of the indices.  The helpers at the bottom of the
module work on any product of chains of a given ``base``; they are reused for
the bipolar (base 5) and m-point (base m + 1) lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import NotNested, OutOfRange

MAX_CRITERIA = 16


def check_n(n: int) -> int:
    if not isinstance(n, int) or n < 1 or n > MAX_CRITERIA:
        raise OutOfRange(f"criteria count must be an integer in [1, {MAX_CRITERIA}], got {n!r}")
    return n


def bits_of(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << i
    return bits


def members(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


@dataclass(frozen=True, order=True)
class CriterionSet:
    """A subset of ``{0, ..., n-1}`` stored as a bitmask."""

    bits: int
    n: int

    def __post_init__(self):
        check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise OutOfRange(f"bitmask {self.bits:#x} uses positions outside 0..{self.n - 1}")

    @classmethod
    def of(cls, n: int, indices: Iterable[int] = ()) -> "CriterionSet":
        return cls(bits_of(indices), n)

    @classmethod
    def full(cls, n: int) -> "CriterionSet":
        return cls((1 << n) - 1, n)

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(members(self.bits))

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def _same_n(self, other: "CriterionSet") -> None:
        if self.n != other.n:
            raise ValueError(f"criteria counts differ: {self.n} vs {other.n}")

    def issubset(self, other: "CriterionSet") -> bool:
        self._same_n(other)
        return self.bits & ~other.bits == 0

    def __or__(self, other: "CriterionSet") -> "CriterionSet":
        self._same_n(other)
        return CriterionSet(self.bits | other.bits, self.n)

    def __and__(self, other: "CriterionSet") -> "CriterionSet":
        self._same_n(other)
        return CriterionSet(self.bits & other.bits, self.n)

    def __sub__(self, other: "CriterionSet") -> "CriterionSet":
        self._same_n(other)
        return CriterionSet(self.bits & ~other.bits, self.n)

    def render(self, labels: Sequence[str] | None = None) -> str:
        names = [labels[i] if labels else str(i) for i in self]
        return "{" + ",".join(names) + "}"


@dataclass(frozen=True)
class QPair:
    """An element (A, B) of the lattice: A is the sure coalition, B the possible one."""

    a: CriterionSet
    b: CriterionSet

    def __post_init__(self):
        if self.a.n != self.b.n:
            raise ValueError(f"criteria counts differ: {self.a.n} vs {self.b.n}")
        if self.a.bits & ~self.b.bits:
            raise NotNested(f"A={self.a.render()} is not a subset of B={self.b.render()}")

    @property
    def n(self) -> int:
        return self.a.n

    @classmethod
    def from_bits(cls, a: int, b: int, n: int) -> "QPair":
        return cls(CriterionSet(a, n), CriterionSet(b, n))

    def render(self, labels: Sequence[str] | None = None) -> str:
        return f"A={self.a.render(labels)};B={self.b.render(labels)}"


def qpair_new(a: CriterionSet, b: CriterionSet) -> QPair:
    return QPair(a, b)


def q_leq(p: QPair, q: QPair) -> bool:
    return p.a.issubset(q.a) and p.b.issubset(q.b)


def q_union(p: QPair, q: QPair) -> QPair:
    return QPair(p.a | q.a, p.b | q.b)


def q_intersection(p: QPair, q: QPair) -> QPair:
    return QPair(p.a & q.a, p.b & q.b)


@lru_cache(maxsize=None)
def _pow3_sums(n: int) -> tuple[int, ...]:
    # entry `mask` holds sum(3**i for i in mask)
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + 3 ** (low.bit_length() - 1)
    return tuple(sums)


def code_of(a: int, b: int, n: int) -> int:
    """Dense index of the pair given by bitmasks ``a ⊆ b``."""
    t = _pow3_sums(n)
    return t[a] + t[b]


@lru_cache(maxsize=None)
def pair_bits(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs as ``(a_bits, b_bits)`` in dense-index order."""
    check_n(n)
    out = []
    for code in range(3**n):
        a = b = 0
        c = code
        for i in range(n):
            d = c % 3
            c //= 3
            if d:
                b |= 1 << i
                if d == 2:
                    a |= 1 << i
        out.append((a, b))
    return tuple(out)


def q_index(p: QPair) -> int:
    return code_of(p.a.bits, p.b.bits, p.n)


def q_from_index(code: int, n: int) -> QPair:
    check_n(n)
    if not 0 <= code < 3**n:
        raise OutOfRange(f"index {code} outside [0, 3^{n})")
    a, b = pair_bits(n)[code]
    return QPair.from_bits(a, b, n)


def enumerate_q(n: int) -> list[QPair]:
    return [QPair.from_bits(a, b, n) for a, b in pair_bits(n)]


def parse_pair(text: str, labels: Sequence[str]) -> QPair:
    """Inverse of :meth:`QPair.render` for label-based renderings."""
    lookup = {name: i for i, name in enumerate(labels)}
    parts = dict(part.split("=", 1) for part in text.strip().split(";"))

    def _set(raw: str) -> CriterionSet:
        raw = raw.strip()
        if not (raw.startswith("{") and raw.endswith("}")):
            raise ValueError(f"malformed set {raw!r}")
        names = [s.strip() for s in raw[1:-1].split(",") if s.strip()]
        try:
            return CriterionSet.of(len(labels), (lookup[s] for s in names))
        except KeyError as exc:
            raise ValueError(f"unknown criterion label {exc.args[0]!r}") from None

    return QPair(_set(parts["A"]), _set(parts["B"]))


# -- products of chains ------------------------------------------------------


def chain_digits(code: int, n: int, base: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(code % base)
        code //= base
    return out


def chain_covers(n: int, base: int) -> Iterator[tuple[int, int]]:
    """Yield every covering edge ``(lower, upper)`` of the product of chains."""
    for code in range(base**n):
        c, step = code, 1
        for _ in range(n):
            if c % base:
                yield code - step, code
            c //= base
            step *= base


def lower_set_sums(values: Sequence, n: int, base: int = 3) -> list:
    """Zeta transform on a product of chains: ``f(p) = sum of g(q) for q <= p``."""
    out = list(values)
    step = 1
    for _ in range(n):
        block = step * base
        for start in range(0, len(out), block):
            for off in range(start, start + step):
                for d in range(1, base):
                    out[off + d * step] += out[off + (d - 1) * step]
        step = block
    return out


def lower_set_differences(values: Sequence, n: int, base: int = 3) -> list:
    """Inverse of :func:`lower_set_sums` (Möbius inversion on a product of chains)."""
    out = list(values)
    step = 1
    for _ in range(n):
        block = step * base
        for start in range(0, len(out), block):
            for off in range(start, start + step):
                for d in range(base - 1, 0, -1):
                    out[off + d * step] -= out[off + (d - 1) * step]
        step = block
    return out
