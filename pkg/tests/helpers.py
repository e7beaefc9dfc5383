"""Generators and brute-force oracles shared by the test modules."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from rcint.capacity import Capacity, IntervalCapacity
from rcint.integrals import Interval, IntervalVector
from rcint.lattice import lower_set_sums, pair_bits

DEAN_LABELS = ["M", "Ph", "L"]
M, PH, L = 1, 2, 4
FULL3 = 7

# values fixed by the dean example, plus mu(∅,N) = 0.6 which makes the
# completions non-separable
DEAN_SPEC = {
    (0, 0): Fraction(0),
    (FULL3, FULL3): Fraction(1),
    (M | PH, FULL3): Fraction(9, 10),
    (PH, FULL3): Fraction(7, 10),
    (M | PH, M | PH): Fraction(1, 2),
    (0, FULL3): Fraction(3, 5),
}

DEAN_ALTS = {
    "S1": IntervalVector.of(8, 8, 7),
    "S2": IntervalVector.of((7, 8), 8, (6, 8)),
    "S3": IntervalVector.of(9, 9, (5, 6)),
}


def pair_leq(p, q) -> bool:
    return p[0] & ~q[0] == 0 and p[1] & ~q[1] == 0


def monotone_completion(n, top, spec: dict, kind: str) -> IntervalCapacity:
    """Smallest (``kind="lower"``) or largest (``"upper"``) monotone table through ``spec``."""
    spec = dict(spec)
    spec.setdefault((0, 0), 0 * top)
    spec.setdefault(((1 << n) - 1, (1 << n) - 1), top)
    values = []
    for p in pair_bits(n):
        if kind == "lower":
            values.append(max(v for s, v in spec.items() if pair_leq(s, p)))
        else:
            values.append(min(v for s, v in spec.items() if pair_leq(p, s)))
    return IntervalCapacity(n, top, tuple(values))


def dean_capacity(kind: str = "lower") -> IntervalCapacity:
    return monotone_completion(3, Fraction(1), DEAN_SPEC, kind)


def _scale_to_top(values, top, exact):
    peak = values[-1]
    if exact:
        return [Fraction(v) * top / peak for v in values]
    return [float(v) * top / float(peak) for v in values]


def random_capacity(rng: random.Random, n: int, top=1, exact: bool = True, style: str | None = None) -> IntervalCapacity:
    """Random valid interval capacity.

    ``style="mass"`` sums nonnegative random masses over lower sets (strictly
    increasing tables); ``style="max"`` takes running maxima of random values
    (many flat steps and ties).
    """
    style = style or rng.choice(("mass", "max"))
    size = 3**n
    raw = [rng.randint(0, 9) for _ in range(size)]
    raw[0] = 0
    if style == "mass":
        vals = lower_set_sums(raw, n, 3)
    else:
        vals = _running_max(raw, n)
    if vals[-1] == 0:
        vals[-1] = 1
    scaled = _scale_to_top(vals, top, exact)
    scaled[0] = 0 * top
    scaled[-1] = top
    return IntervalCapacity(n, top, tuple(scaled))


def _running_max(values, n, base=3):
    out = list(values)
    step = 1
    for _ in range(n):
        block = step * base
        for start in range(0, len(out), block):
            for off in range(start, start + step):
                for d in range(1, base):
                    out[off + d * step] = max(out[off + d * step], out[off + (d - 1) * step])
        step = block
    return out


def random_classical(rng: random.Random, n: int, top=1, exact: bool = True) -> Capacity:
    raw = [rng.randint(0, 9) for _ in range(1 << n)]
    raw[0] = 0
    vals = list(raw)
    for mask in range(1 << n):
        for i in range(n):
            if mask >> i & 1:
                vals[mask] = max(vals[mask], vals[mask ^ (1 << i)])
    if vals[-1] == 0:
        vals[-1] = 1
    scaled = _scale_to_top(vals, top, exact)
    scaled[0], scaled[-1] = 0 * top, top
    return Capacity(n, top, tuple(scaled))


def additive(weights, top=1) -> Capacity:
    n = len(weights)
    return Capacity(n, top, tuple(sum(w for i, w in enumerate(weights) if mask >> i & 1) for mask in range(1 << n)))


def random_number(rng: random.Random, lo: int, hi: int, exact: bool):
    if exact:
        return Fraction(rng.randint(2 * lo, 2 * hi), 2)
    return rng.uniform(lo, hi)


def random_vector(rng: random.Random, n: int, lo: int = -5, hi: int = 10, exact: bool = True) -> IntervalVector:
    items = []
    for _ in range(n):
        a, b = sorted((random_number(rng, lo, hi, exact), random_number(rng, lo, hi, exact)))
        if rng.random() < 0.25:
            b = a
        items.append(Interval(a, b))
    return IntervalVector(tuple(items))


def comonotone_pair(rng: random.Random, n: int, exact: bool = True) -> tuple[IntervalVector, IntervalVector]:
    """Two interval vectors whose flattened forms share a sorting permutation."""
    slots = list(range(2 * n))
    rng.shuffle(slots)
    rank = {s: r for r, s in enumerate(slots)}
    for i in range(n):
        if rank[i] > rank[n + i]:
            rank[i], rank[n + i] = rank[n + i], rank[i]
    xs = sorted(random_number(rng, -5, 10, exact) for _ in range(2 * n))
    ys = sorted(random_number(rng, -5, 10, exact) for _ in range(2 * n))
    fx = [xs[rank[s]] for s in range(2 * n)]
    fy = [ys[rank[s]] for s in range(2 * n)]
    return (
        IntervalVector.from_bounds(fx[:n], fx[n:]),
        IntervalVector.from_bounds(fy[:n], fy[n:]),
    )


def full_monotone_violations(values, n) -> list[tuple[int, int]]:
    """Every comparable pair of pairs where the table decreases (O(9^n))."""
    pairs = pair_bits(n)
    out = []
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            if i != j and pair_leq(p, q) and values[i] > values[j]:
                out.append((i, j))
    return out


def lower_set_oracle(g, n) -> list:
    """Zeta transform by direct double loop over all pairs."""
    pairs = pair_bits(n)
    return [sum(g[j] for j, q in enumerate(pairs) if pair_leq(q, p)) for p in pairs]


def mobius_recursive_oracle(f, n) -> list:
    """Möbius inverse by recursive subtraction in (|B|, |A|) order."""
    pairs = pair_bits(n)
    order = sorted(range(len(pairs)), key=lambda k: (bin(pairs[k][1]).count("1"), bin(pairs[k][0]).count("1")))
    m = [None] * len(pairs)
    for k in order:
        m[k] = f[k] - sum(m[j] for j, q in enumerate(pairs) if j != k and pair_leq(q, pairs[k]))
    return m


def table_from(n, entries: dict) -> list:
    """Dense table over the pairs from ``{(a_bits, b_bits): value}``."""
    index = {p: k for k, p in enumerate(pair_bits(n))}
    values = [None] * 3**n
    for p, v in entries.items():
        values[index[p]] = v
    return values


# ordinal-scale example on two criteria, scale top 10
SUGENO_EX1 = {
    (0, 0): 0, (0, 1): 3, (0, 2): 2, (0, 3): 5, (1, 1): 4,
    (1, 3): 6, (2, 2): 4, (2, 3): 7, (3, 3): 10,
}  # fmt: skip
SUGENO_EX1_X = IntervalVector.of((5, 9), (2, 4))

# student example: four subjects on a 30 point scale, six specified values
M1, M2, M3, M4 = 1, 2, 4, 8
SUGENO_EX2_SPEC = {
    (15, 15): 30,
    (M1 | M2 | M3, 15): 29,
    (M1 | M2, 15): 28,
    (M2, 15): 24,
    (M2, M1 | M2): 23,
    (0, M1 | M2): 20,
}
SUGENO_EX2_X = IntervalVector.of((26, 30), (28, 30), (24, 27), (23, 27))


def sugeno_ex1() -> IntervalCapacity:
    return IntervalCapacity(2, 10, tuple(table_from(2, SUGENO_EX1)))


def sugeno_ex2(kind: str) -> IntervalCapacity:
    return monotone_completion(4, 30, SUGENO_EX2_SPEC, kind)


def solve_square(A, b):
    """Gauss-Jordan on Fractions; None when singular."""
    m = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(A, b)]
    for col in range(m):
        piv = next((r for r in range(col, m) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(m):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[r][-1] for r in range(m)]


def vertex_oracle(c, E, b):
    """Best objective over all basic feasible solutions (None when there is none)."""
    m, v = len(E), len(c)
    best = None
    for cols in itertools.combinations(range(v), m):
        sol = solve_square([[row[j] for j in cols] for row in E], b)
        if sol is None or any(s < 0 for s in sol):
            continue
        val = sum(c[j] * s for j, s in zip(cols, sol))
        best = val if best is None else max(best, val)
    return best


def random_lp(rng):
    v = rng.randint(2, 10)
    m = rng.randint(1, min(4, v))
    E = [[rng.randint(-3, 5) for _ in range(v)] for _ in range(m - 1)]
    E.append([rng.randint(1, 4) for _ in range(v)])  # bounds the feasible set
    b = [rng.randint(0, 12) for _ in range(m)]
    c = [rng.randint(-5, 5) for _ in range(v)]
    return c, E, b
