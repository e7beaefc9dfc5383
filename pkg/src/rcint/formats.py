"""Reading and writing capacities (JSON) and alternatives (CSV).

Numbers are parsed as :class:`fractions.Fraction` in exact mode and as floats
otherwise.  Criteria are referred to by string labels in files and by
0-based position in memory.
"""

from __future__ import annotations

import csv
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

from .capacity import Capacity, IntervalCapacity
from .errors import RcintError
from .extensions import BipolarIntervalCapacity, BipolarQuad, LevelDependentCapacity, MPointCapacity, MPointVector
from .integrals import Interval, IntervalVector
from .lattice import CriterionSet, code_of, pair_bits
from .mobius import MobiusRepresentation


class FormatError(RcintError):
    """A file does not follow the expected schema."""


def number(raw: Any, exact: bool, where: str = ""):
    if isinstance(raw, bool) or raw is None:
        raise FormatError(f"{where}: expected a number, got {raw!r}")
    try:
        if exact:
            return Fraction(str(raw).strip())
        if isinstance(raw, str) and "/" in raw:
            return float(Fraction(raw.strip()))
        return float(raw)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"{where}: cannot parse number {raw!r}") from None


def render_number(v, exact: bool, as_json: bool = False):
    if exact and as_json:
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return format(float(v), ".12g")


def _read_json(path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None


def _labels(doc: dict, path) -> list[str]:
    n = doc.get("n")
    labels = doc.get("labels")
    if labels is None and isinstance(n, int):
        labels = [str(i + 1) for i in range(n)]
    if not isinstance(labels, list) or (isinstance(n, int) and len(labels) != n):
        raise FormatError(f"{path}: 'labels' must list exactly n criteria")
    if len(set(labels)) != len(labels):
        raise FormatError(f"{path}: duplicate criterion labels")
    return [str(s) for s in labels]


def _bits(names, lookup, where) -> int:
    if not isinstance(names, list):
        raise FormatError(f"{where}: expected a list of labels")
    bits = 0
    for name in names:
        if str(name) not in lookup:
            raise FormatError(f"{where}: unknown criterion label {name!r}")
        bits |= 1 << lookup[str(name)]
    return bits


def _entries(doc, path) -> list:
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise FormatError(f"{path}: missing 'entries' list")
    return entries


def _fill(size: int, items, path, describe) -> list:
    values: list = [None] * size
    for code, v, k in items:
        if values[code] is not None:
            raise FormatError(f"{path}: entry {k} repeats {describe(code)}")
        values[code] = v
    missing = [c for c, v in enumerate(values) if v is None]
    if missing:
        raise FormatError(f"{path}: {len(missing)} entries missing, first is {describe(missing[0])}")
    return values


def load_interval_table(path, exact: bool = True) -> tuple[dict, list[str], list]:
    """Raw pair table of a capacity or Möbius file: ``(doc, labels, values)``."""
    doc = _read_json(path)
    labels, values = _interval_table(doc, str(path), exact)
    return doc, labels, values


def _interval_table(doc, path: str, exact: bool) -> tuple[list[str], list]:
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int):
        raise FormatError(f"{path}: expected an object with integer 'n'")
    labels = _labels(doc, path)
    lookup = {s: i for i, s in enumerate(labels)}
    n = doc["n"]
    items = []
    for k, e in enumerate(_entries(doc, path)):
        where = f"{path}: entry {k}"
        if not isinstance(e, dict) or "A" not in e or "B" not in e or "v" not in e:
            raise FormatError(f"{where}: needs keys 'A', 'B' and 'v'")
        a, b = _bits(e["A"], lookup, where), _bits(e["B"], lookup, where)
        if a & ~b:
            raise FormatError(f"{where}: A is not a subset of B")
        items.append((code_of(a, b, n), number(e["v"], exact, where), k))
    pairs = pair_bits(n)

    def describe(code):
        a, b = pairs[code]
        return f"A={CriterionSet(a, n).render(labels)};B={CriterionSet(b, n).render(labels)}"

    return labels, _fill(3**n, items, path, describe)


def _capacity_from_doc(doc, path: str, exact: bool) -> tuple[IntervalCapacity, list[str]]:
    labels, values = _interval_table(doc, path, exact)
    top = number(doc.get("top", 1), exact, f"{path}: top")
    return IntervalCapacity(doc["n"], top, tuple(values)), labels


def load_capacity(path, exact: bool = True) -> tuple[IntervalCapacity, list[str]]:
    return _capacity_from_doc(_read_json(path), str(path), exact)


def load_mobius(path, exact: bool = True) -> tuple[MobiusRepresentation, list[str]]:
    doc, labels, values = load_interval_table(path, exact)
    top = number(doc.get("top", 1), exact, f"{path}: top")
    return MobiusRepresentation(doc["n"], top, tuple(values)), labels


def load_classical(path, exact: bool = True) -> tuple[Capacity, list[str]]:
    doc = _read_json(path)
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int):
        raise FormatError(f"{path}: expected an object with integer 'n'")
    labels = _labels(doc, path)
    lookup = {s: i for i, s in enumerate(labels)}
    n = doc["n"]
    items = []
    for k, e in enumerate(_entries(doc, path)):
        where = f"{path}: entry {k}"
        if not isinstance(e, dict) or "A" not in e or "v" not in e:
            raise FormatError(f"{where}: needs keys 'A' and 'v'")
        items.append((_bits(e["A"], lookup, where), number(e["v"], exact, where), k))
    values = _fill(1 << n, items, path, lambda c: CriterionSet(c, n).render(labels))
    top = number(doc.get("top", 1), exact, f"{path}: top")
    return Capacity(n, top, tuple(values)), labels


def load_bipolar(path, exact: bool = True) -> tuple[BipolarIntervalCapacity, list[str]]:
    doc = _read_json(path)
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int):
        raise FormatError(f"{path}: expected an object with integer 'n'")
    labels = _labels(doc, path)
    lookup = {s: i for i, s in enumerate(labels)}
    n = doc["n"]
    items = []
    for k, e in enumerate(_entries(doc, path)):
        where = f"{path}: entry {k}"
        keys = ("A+", "B+", "A-", "B-")
        if not isinstance(e, dict) or any(key not in e for key in keys) or "v" not in e:
            raise FormatError(f"{where}: needs keys 'A+', 'B+', 'A-', 'B-' and 'v'")
        sets = [CriterionSet(_bits(e[key], lookup, where), n) for key in keys]
        try:
            quad = BipolarQuad(*sets)
        except ValueError as exc:
            raise FormatError(f"{where}: {exc}") from None
        items.append((quad.code(), number(e["v"], exact, where), k))
    values = _fill(5**n, items, path, lambda c: f"quadruple code {c}")
    return BipolarIntervalCapacity(n, tuple(values)), labels


def load_level(path, exact: bool = True) -> tuple[LevelDependentCapacity, list[str]]:
    """Level-dependent capacity: a JSON list of ``{"t_upper": t, "capacity": {...}}``.

    ``t_upper`` may be ``null`` or ``"inf"`` for the last piece.  An optional
    wrapper object ``{"lower": t0, "pieces": [...]}`` sets the lower end of
    the domain.
    """
    doc = _read_json(path)
    lower: Any = -math.inf
    if isinstance(doc, dict):
        if doc.get("lower") is not None:
            lower = number(doc["lower"], exact, f"{path}: lower")
        doc = doc.get("pieces")
    if not isinstance(doc, list) or not doc:
        raise FormatError(f"{path}: expected a non-empty list of pieces")
    uppers, tables, labels = [], [], None
    for k, piece in enumerate(doc):
        where = f"{path}: piece {k}"
        if not isinstance(piece, dict) or "capacity" not in piece:
            raise FormatError(f"{where}: needs 't_upper' and 'capacity'")
        raw = piece.get("t_upper")
        uppers.append(math.inf if raw in (None, "inf", "Infinity") else number(raw, exact, where))
        mu, lab = _capacity_from_doc(piece["capacity"], f"{where} capacity", exact)
        if labels is not None and lab != labels:
            raise FormatError(f"{where}: labels differ from piece 0")
        labels = lab
        tables.append(mu)
    return LevelDependentCapacity(tables[0].n, tuple(uppers), tuple(tables), lower), labels


def load_mpoint_capacity(path, exact: bool = True) -> tuple[MPointCapacity, list[str]]:
    doc = _read_json(path)
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int) or not isinstance(doc.get("m"), int):
        raise FormatError(f"{path}: expected an object with integer 'n' and 'm'")
    labels = _labels(doc, path)
    lookup = {s: i for i, s in enumerate(labels)}
    n, m = doc["n"], doc["m"]
    items = []
    for k, e in enumerate(_entries(doc, path)):
        where = f"{path}: entry {k}"
        if not isinstance(e, dict) or not isinstance(e.get("sets"), list) or len(e["sets"]) != m or "v" not in e:
            raise FormatError(f"{where}: needs 'sets' (a list of {m} label lists) and 'v'")
        sets = [_bits(s, lookup, where) for s in e["sets"]]
        if any(s & ~t for s, t in zip(sets, sets[1:])):
            raise FormatError(f"{where}: sets are not nested")
        code = 0
        for i in reversed(range(n)):
            code = code * (m + 1) + sum(s >> i & 1 for s in sets)
        items.append((code, number(e["v"], exact, where), k))
    values = _fill((m + 1) ** n, items, path, lambda c: f"chain code {c}")
    top = number(doc.get("top", 1), exact, f"{path}: top")
    return MPointCapacity(n, m, top, tuple(values)), labels


# -- writers -------------------------------------------------------------------


def interval_table_doc(n, top, values, labels, exact: bool, mobius: bool = False) -> dict:
    entries = []
    for (a, b), v in zip(pair_bits(n), values):
        entries.append(
            {
                "A": [labels[i] for i in CriterionSet(a, n)],
                "B": [labels[i] for i in CriterionSet(b, n)],
                "v": _json_number(v, exact),
            }
        )
    doc = {"n": n, "top": _json_number(top, exact), "labels": list(labels), "entries": entries}
    if mobius:
        doc["mobius"] = True
    return doc


def _json_number(v, exact):
    if exact:
        return render_number(v, True, as_json=True)
    return float(v)


def capacity_doc(mu: IntervalCapacity, labels, exact: bool) -> dict:
    return interval_table_doc(mu.n, mu.top, mu.values, labels, exact)


def classical_doc(nu: Capacity, labels, exact: bool) -> dict:
    entries = [
        {"A": [labels[i] for i in CriterionSet(mask, nu.n)], "v": _json_number(v, exact)}
        for mask, v in enumerate(nu.values)
    ]
    return {"n": nu.n, "top": _json_number(nu.top, exact), "labels": list(labels), "entries": entries}


# -- alternatives --------------------------------------------------------------


def _criterion_columns(header: list[str], labels: list[str], per: int, suffixes, path) -> list[list[int]]:
    """Column indices for each capacity label, in capacity order."""
    if not header or header[0].strip().lower() != "id":
        raise FormatError(f"{path}:1: first column must be 'id'")
    cols: dict[str, dict[str, int]] = {}
    for k, name in enumerate(header[1:], start=1):
        name = name.strip()
        base, _, suffix = name.rpartition("_")
        if not base or suffix not in suffixes:
            raise FormatError(f"{path}:1: column {name!r} must end in one of {sorted(suffixes)}")
        cols.setdefault(base, {})[suffix] = k
    if sorted(cols) != sorted(labels):
        raise FormatError(f"{path}:1: criteria {sorted(cols)} do not match capacity labels {sorted(labels)}")
    out = []
    for label in labels:
        got = cols[label]
        if len(got) != per:
            raise FormatError(f"{path}:1: criterion {label!r} needs {per} columns")
        out.append([got[s] for s in suffixes])
    return out


def _rows(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh)]
    if not rows:
        raise FormatError(f"{path}: empty file")
    return rows


def load_alternatives(path, labels: list[str], exact: bool = True) -> list[tuple[str, IntervalVector]]:
    """Alternatives CSV with header ``id,<label>_lo,<label>_hi,...``."""
    rows = _rows(path)
    cols = _criterion_columns(rows[0], labels, 2, ("lo", "hi"), path)
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or not "".join(row).strip():
            continue
        if len(row) != len(rows[0]):
            raise FormatError(f"{path}:{lineno}: expected {len(rows[0])} fields, got {len(row)}")
        where = f"{path}:{lineno}"
        items = []
        for lo_k, hi_k in cols:
            lo, hi = number(row[lo_k], exact, where), number(row[hi_k], exact, where)
            if lo > hi:
                raise FormatError(f"{where}: column {rows[0][lo_k]!r} exceeds {rows[0][hi_k]!r}")
            items.append(Interval(lo, hi))
        out.append((row[0].strip(), IntervalVector(tuple(items))))
    return out


def load_mpoint_alternatives(path, labels: list[str], m: int, exact: bool = True) -> list[tuple[str, MPointVector]]:
    """m-point CSV with header ``id,<label>_1,...,<label>_m,...``."""
    rows = _rows(path)
    suffixes = tuple(str(j) for j in range(1, m + 1))
    cols = _criterion_columns(rows[0], labels, m, suffixes, path)
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or not "".join(row).strip():
            continue
        if len(row) != len(rows[0]):
            raise FormatError(f"{path}:{lineno}: expected {len(rows[0])} fields, got {len(row)}")
        where = f"{path}:{lineno}"
        pts = [tuple(number(row[k], exact, where) for k in ks) for ks in cols]
        try:
            out.append((row[0].strip(), MPointVector(tuple(pts))))
        except RcintError as exc:
            raise FormatError(f"{where}: {exc}") from None
    return out
