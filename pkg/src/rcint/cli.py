"""Command-line front end.

Exit status: 0 on success, 2 when an input fails validation, 1 on I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import capacity as cap
from . import formats
from .errors import NotMonotone, RcintError
from .extensions import bipolar_rci, concave_robust, mpoint_rci, rci_level_dependent
from .lattice import CriterionSet
from .integrals import choquet, rci, rci_mobius, rci_riemann, robust_shilkret, rsi, shilkret, sugeno
from .mobius import is_interval_capacity_mobius, mobius

log = logging.getLogger("rcint")

KINDS = ("rci", "rci-mobius", "rsi", "shilkret-r", "choquet", "sugeno", "shilkret", "bipolar", "level", "concave", "mpoint")
TIE_EPS = 1e-9

EXIT_OK, EXIT_IO, EXIT_INVALID = 0, 1, 2


class Failure(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _exact(args) -> bool:
    return args.mode == "exact"


def _classical(path, exact):
    """A classical capacity file, or the diagonal of an interval capacity file."""
    doc = formats._read_json(path)
    entries = doc.get("entries") if isinstance(doc, dict) else None
    if entries and isinstance(entries[0], dict) and "B" not in entries[0]:
        return formats.load_classical(path, exact)
    mu, labels = formats.load_capacity(path, exact)
    return cap.diagonal_capacity(mu), labels


def _degenerate(alts):
    out = []
    for ident, x in alts:
        if any(it.lo != it.hi for it in x):
            raise RcintError(f"alternative {ident!r}: classical integrals need exact (degenerate) evaluations")
        out.append((ident, list(x.lower())))
    return out


def evaluate(args) -> list[tuple[str, object]]:
    exact = _exact(args)
    kind = args.integral
    if kind == "mpoint":
        mu, labels = formats.load_mpoint_capacity(args.capacity, exact)
        alts = formats.load_mpoint_alternatives(args.alts, labels, mu.m, exact)
        return [(i, mpoint_rci(x, mu)) for i, x in alts]
    if kind in ("choquet", "sugeno", "shilkret"):
        nu, labels = _classical(args.capacity, exact)
        alts = _degenerate(formats.load_alternatives(args.alts, labels, exact))
        fn = {"choquet": choquet, "sugeno": sugeno, "shilkret": shilkret}[kind]
        return [(i, fn(x, nu)) for i, x in alts]
    if kind == "bipolar":
        mu, labels = formats.load_bipolar(args.capacity, exact)
        alts = formats.load_alternatives(args.alts, labels, exact)
        return [(i, bipolar_rci(x, mu)) for i, x in alts]
    if kind == "level":
        mu, labels = formats.load_level(args.capacity, exact)
        alts = formats.load_alternatives(args.alts, labels, exact)
        return [(i, rci_level_dependent(x, mu)) for i, x in alts]
    if kind == "rci-mobius":
        doc = formats._read_json(args.capacity)
        if isinstance(doc, dict) and doc.get("mobius"):
            m, labels = formats.load_mobius(args.capacity, exact)
        else:
            mu, labels = formats.load_capacity(args.capacity, exact)
            m = mobius(mu)
        alts = formats.load_alternatives(args.alts, labels, exact)
        return [(i, rci_mobius(x, m)) for i, x in alts]

    mu, labels = formats.load_capacity(args.capacity, exact)
    alts = formats.load_alternatives(args.alts, labels, exact)
    if kind == "rci":
        return [(i, rci(x, mu)) for i, x in alts]
    if kind == "rsi":
        return [(i, rsi(x, mu)) for i, x in alts]
    if kind == "shilkret-r":
        return [(i, robust_shilkret(x, mu)) for i, x in alts]
    if kind == "concave":
        return [(i, concave_robust(x, mu, exact=exact)[0]) for i, x in alts]
    raise Failure(f"unknown integral {kind!r}", EXIT_INVALID)


def rank(results):
    """Group results into tie classes ordered by decreasing value."""
    ordered = sorted(results, key=lambda r: r[1], reverse=True)
    groups: list[list] = []
    for ident, v in ordered:
        if groups and abs(groups[-1][0][1] - v) <= TIE_EPS:
            groups[-1].append((ident, v))
        else:
            groups.append([(ident, v)])
    return groups


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args):
    results = evaluate(args)
    exact = _exact(args)
    riemann = None
    if args.samples:
        if args.integral != "rci":
            raise Failure("--samples only applies to --integral rci", EXIT_INVALID)
        mu, labels = formats.load_capacity(args.capacity, exact)
        alts = formats.load_alternatives(args.alts, labels, exact)
        riemann = [rci_riemann(x, mu, args.samples) for _, x in alts]
    if args.format == "json":
        rows = []
        for k, (ident, v) in enumerate(results):
            row = {"id": ident, "value": formats.render_number(v, exact, as_json=True)}
            if riemann is not None:
                row["riemann"] = formats.render_number(riemann[k], False)
            rows.append(row)
        _emit(json.dumps({"integral": args.integral, "results": rows}, indent=2) + "\n", args.out)
        return
    lines = ["id,value" + (",riemann" if riemann is not None else "")]
    for k, (ident, v) in enumerate(results):
        line = f"{ident},{formats.render_number(v, exact)}"
        if riemann is not None:
            line += f",{formats.render_number(riemann[k], False)}"
        lines.append(line)
    _emit("\n".join(lines) + "\n", args.out)


def cmd_rank(args):
    groups = rank(evaluate(args))
    exact = _exact(args)
    if args.format == "json":
        doc = [
            {
                "rank": r,
                "ids": [ident for ident, _ in g],
                "value": formats.render_number(g[0][1], exact, as_json=True),
                "tie": len(g) > 1,
            }
            for r, g in enumerate(groups, start=1)
        ]
        _emit(json.dumps({"integral": args.integral, "ranking": doc}, indent=2) + "\n", args.out)
        return
    lines = ["rank,id,value,tie"]
    for r, g in enumerate(groups, start=1):
        for ident, v in g:
            lines.append(f"{r},{ident},{formats.render_number(v, exact)},{'tie' if len(g) > 1 else ''}")
    _emit("\n".join(lines) + "\n", args.out)


def cmd_mobius(args):
    exact = _exact(args)
    mu, labels = formats.load_capacity(args.capacity, exact)
    m = mobius(mu)
    doc = formats.interval_table_doc(m.n, m.top, m.values, labels, exact, mobius=True)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)


def cmd_check(args):
    exact = _exact(args)
    doc = formats._read_json(args.capacity)
    if isinstance(doc, dict) and doc.get("mobius"):
        m, labels = formats.load_mobius(args.capacity, exact)
        report = is_interval_capacity_mobius(m)
        if not report:
            lines = [_describe_mobius_violation(v, m.n, labels) for v in report.violations[:20]]
            raise Failure("Möbius table is not an interval capacity:\n  " + "\n  ".join(lines), EXIT_INVALID)
        _emit(f"ok: Möbius inverse of a valid interval capacity (n={m.n}, top={m.top})\n", args.out)
        return
    try:
        mu, labels = formats.load_capacity(args.capacity, exact)
    except NotMonotone as exc:
        labels = formats._labels(doc, args.capacity)
        raise Failure(
            f"{args.capacity}: not monotone: mu({exc.lower.render(labels)}) > mu({exc.upper.render(labels)})",
            EXIT_INVALID,
        ) from None
    separable = cap.is_separable(mu)
    _emit(f"ok: interval capacity (n={mu.n}, top={mu.top}); separable: {'yes' if separable else 'no'}\n", args.out)


def _describe_mobius_violation(v, n, labels):
    cond, witness = v
    if cond in (1, 2):
        return f"condition {cond} fails (value {witness})"
    i, a, b = witness
    return (
        f"condition {cond} fails at criterion {labels[i]} for "
        f"A={CriterionSet(a, n).render(labels)};B={CriterionSet(b, n).render(labels)}"
    )


def cmd_gen_separable(args):
    exact = _exact(args)
    alpha = formats.number(args.alpha, exact, "--alpha")
    lower, labels = formats.load_classical(args.lower, exact)
    upper, labels2 = formats.load_classical(args.upper, exact)
    if labels != labels2:
        raise Failure("lower and upper capacities use different labels", EXIT_INVALID)
    mu = cap.separable_from(cap.SeparableDecomposition(alpha, lower, upper))
    _emit(json.dumps(formats.capacity_doc(mu, labels, exact), indent=2) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rcint", description="Robust non-additive integrals of interval evaluations.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    default_mode = os.environ.get("RCINT_MODE", "float")

    def common(p, alts=True):
        p.add_argument("--capacity", required=True, help="capacity JSON file")
        if alts:
            p.add_argument("--alts", required=True, help="alternatives CSV file")
        p.add_argument("--mode", choices=("exact", "float"), default=default_mode)
        p.add_argument("--out", help="write output here instead of stdout")

    for name, fn in (("eval", cmd_eval), ("rank", cmd_rank)):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--integral", choices=KINDS, default="rci")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if name == "eval":
            p.add_argument("--samples", type=int, help="also print a midpoint Riemann sum with this many cells (rci only)")
        p.set_defaults(func=fn)

    p = sub.add_parser("mobius")
    common(p, alts=False)
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("check")
    common(p, alts=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen-separable")
    p.add_argument("--alpha", required=True)
    p.add_argument("--lower", required=True, help="classical capacity JSON for the sure coalition")
    p.add_argument("--upper", required=True, help="classical capacity JSON for the possible coalition")
    p.add_argument("--mode", choices=("exact", "float"), default=default_mode)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_separable)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "mode", "float") not in ("exact", "float"):
        parser.error(f"invalid mode {args.mode!r}")
    try:
        args.func(args)
    except Failure as exc:
        print(f"rcint: {exc}", file=sys.stderr)
        return exc.code
    except RcintError as exc:
        print(f"rcint: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"rcint: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
