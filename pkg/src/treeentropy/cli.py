"""Command-line interface: ``treeentropy <command> [options]``.

Exit status: 0 success, 1 computation failure, 2 usage error, 3 a result was
only conditionally certified while ``--rigor-required`` was given.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import mpmath

from . import asymptotic, besselcheck, kernels, kirchhoff
from .intervals import Rigor
from .seriesbounds import (
    EntropyResult,
    Family,
    LatticeSpec,
    TailMethod,
    certified_digits,
    compute_entropy,
)
from .walkcounts import CountCache, build_counts, default_terms

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_NOT_RIGOROUS = 0, 1, 2, 3
PRECISION_ENV = "TREEENTROPY_PRECISION"
D_SOFT_CAP = 64


@dataclass
class Report:
    """Rows plus the columns to show for plain and csv output."""

    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    records: list[dict[str, Any]] | None = None  # json payload when it differs from rows
    notes: list[str] = field(default_factory=list)
    conditional: bool = False


def _dimensions(text: str) -> list[int]:
    try:
        if "-" in text:
            a, b = (int(x) for x in text.split("-", 1))
            ds = list(range(a, b + 1))
        else:
            ds = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from None
    if not ds or min(ds) < 1 or max(ds) > D_SOFT_CAP:
        raise argparse.ArgumentTypeError(f"dimensions must lie in 1..{D_SOFT_CAP}")
    return ds


def _precision(text: str) -> int:
    bits = int(text)
    if not 64 <= bits <= 4096:
        raise argparse.ArgumentTypeError("precision must lie in 64..4096 bits")
    return bits


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    return _precision(raw) if raw else 256


def _fmt(x, digits: int = 20) -> str:
    return mpmath.nstr(x, digits, min_fixed=-4, max_fixed=6)


# -- commands -------------------------------------------------------------------


def _entropy_rows(results: list[EntropyResult], show_interval: bool) -> Report:
    cols = ["family", "d", "K", "certified", "estimate", "rigor"]
    if show_interval:
        cols[4:4] = ["lo", "hi"]
    report = Report(cols, records=[r.to_record() for r in results])
    for r in results:
        row = {
            "family": r.lattice.family.value,
            "d": r.lattice.dimension,
            "K": r.terms_used,
            "certified": certified_digits(r.certified) or "-",
            "estimate": _fmt(r.estimate, 18),
            "lo": _fmt(r.certified.lo, 20),
            "hi": _fmt(r.certified.hi, 20),
            "rigor": r.certified.rigor.value,
        }
        report.rows.append(row)
        if r.certified.rigor is Rigor.CONDITIONAL:
            report.conditional = True
            report.notes.append(f"d={r.lattice.dimension}: {r.certified.condition_note}")
    return report


def _run_entropies(args, family: Family, dims: Sequence[int]) -> Report:
    cache = CountCache()
    results = []
    for d in dims:
        spec = LatticeSpec(family, d)
        results.append(compute_entropy(spec, args.K, args.precision, cache=cache,
                                       order=args.em_order, zeta_method=args.zeta_bound))
    if args.dump_counts:
        _dump_counts(args.dump_counts, family, dims, args.K, cache)
    return _entropy_rows(results, args.interval)


def _dump_counts(path: str, family: Family, dims: Sequence[int], K: int | None, cache: CountCache) -> None:
    targets = [1] if family is Family.BCC else list(dims)
    if len(targets) > 1 and "{d}" not in path:
        raise UsageError("--dump-counts needs a '{d}' placeholder when several dimensions are computed")
    for d in targets:
        kmax = K if K is not None else max(default_terms(x) for x in dims)
        with open(path.format(d=d), "w") as fh:
            build_counts(d, kmax, cache).dump(fh)


def cmd_compute(args) -> Report:
    return _run_entropies(args, Family(args.family), args.d)


def cmd_bcc(args) -> Report:
    if min(args.d) < 2:
        raise UsageError("bcc lattices need d >= 2")
    return _run_entropies(args, Family.BCC, args.d)


def cmd_table(args) -> Report:
    hyper = _run_entropies(args, Family.HYPERCUBIC, args.d)
    bcc = _run_entropies(args, Family.BCC, args.bcc_d) if args.bcc_d else Report(hyper.columns)
    hyper.rows += bcc.rows
    hyper.records += bcc.records or []
    hyper.notes += bcc.notes
    return hyper


def cmd_asympt(args) -> Report:
    report = Report(["d", "j", "term", "value"])
    for d in args.d:
        for row in asymptotic.term_breakdown(d, args.order):
            report.rows.append({"d": d, "j": row.j, "term": _fmt(row.term, 12), "value": _fmt(row.value, 16)})
        if d >= 3:
            order, value = asymptotic.best_truncation(d)
            report.notes.append(f"d={d}: smallest term at j={order}, value {_fmt(value, 16)}")
    return report


def _quadrature_config(args) -> besselcheck.QuadratureConfig:
    return besselcheck.QuadratureConfig(cutoff=args.cutoff, rel_tol=args.rel_tol, tail_order=args.tail_order)


def cmd_bessel(args) -> Report:
    report = Report(["d", "h_bessel", "rigorous"])
    config = _quadrature_config(args)
    for d in args.d:
        value = besselcheck.h_bessel(d, config, args.precision, backend=args.backend)
        report.rows.append({"d": d, "h_bessel": _fmt(value, 18), "rigorous": False})
    report.notes.append(f"kernel backend: {args.backend or kernels.BACKEND}")
    return report


def cmd_oracle(args) -> Report:
    report = Report(["d", "n", "tau", "estimate", "gap"])
    for d in args.d:
        reference = compute_entropy(LatticeSpec(Family.HYPERCUBIC, d), args.K, args.precision).estimate
        for row in kirchhoff.convergence_report(d, args.n_max, reference, size_cap=args.size_cap):
            report.rows.append({"d": d, "n": row.n, "tau": str(row.tau),
                                "estimate": _fmt(row.estimate, 16), "gap": _fmt(row.gap, 6)})
    return report


def cmd_xcheck(args) -> Report:
    report = Report(["d", "series", "bessel", "difference", "inside", "asymptotic"])
    config = _quadrature_config(args)
    cache = CountCache()
    for d in args.d:
        res = compute_entropy(LatticeSpec(Family.HYPERCUBIC, d), args.K, args.precision, cache=cache)
        bes = besselcheck.h_bessel(d, config, args.precision, backend=args.backend)
        asym = asymptotic.best_truncation(d)[1] if d >= 3 else None
        report.rows.append({
            "d": d,
            "series": _fmt(res.estimate, 18),
            "bessel": _fmt(bes, 18),
            "difference": _fmt(bes - res.estimate, 3),
            "inside": bes in res.certified,
            "asymptotic": "-" if asym is None else _fmt(asym, 12),
        })
        if res.certified.rigor is Rigor.CONDITIONAL:
            report.conditional = True
    return report


# -- output ---------------------------------------------------------------------


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        payload = report.records if report.records is not None else report.rows
        return json.dumps(payload, indent=2, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=report.columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(report.rows)
        return buf.getvalue()
    cells = [[str(row.get(c, "")) for c in report.columns] for row in report.rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(report.columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(report.columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    lines += [f"# {note}" for note in report.notes]
    return "\n".join(lines) + "\n"


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treeentropy", description="Spanning-tree entropy of lattices.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--precision", type=_precision, default=None,
                        help=f"working precision in bits (default ${PRECISION_ENV} or 256)")
    common.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    common.add_argument("--rigor-required", action="store_true",
                        help="exit 3 if any interval is only conditionally certified")
    series = argparse.ArgumentParser(add_help=False)
    series.add_argument("-K", type=int, default=None, help="series terms (default 1000/100/80 by d)")
    series.add_argument("--em-order", type=int, default=4, help="Euler-Maclaurin order for estimates")
    series.add_argument("--zeta-bound", choices=["midpoint", "euler_maclaurin", "elementary"],
                        default="midpoint", help="rigorous Hurwitz zeta bound for the tail")
    series.add_argument("--interval", action="store_true", help="show both interval endpoints")
    series.add_argument("--dump-counts", metavar="PATH", help="write k<TAB>f(d,k) tables")
    quad = argparse.ArgumentParser(add_help=False)
    quad.add_argument("--cutoff", type=float, default=None, help="quadrature cutoff (default 50*d)")
    quad.add_argument("--rel-tol", type=float, default=1e-11)
    quad.add_argument("--tail-order", type=int, default=8)
    quad.add_argument("--backend", choices=["numba", "numpy"], default=None)

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("compute", parents=[common, series], help="entropy with certified bounds")
    p.add_argument("--family", choices=[f.value for f in Family], default="hypercubic")
    p.add_argument("-d", type=_dimensions, required=True, help="dimension, list a,b or range a-b")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bcc", parents=[common, series], help="body-centred lattice entropy")
    p.add_argument("-d", type=_dimensions, default=[3, 4])
    p.set_defaults(func=cmd_bcc)

    p = sub.add_parser("table", parents=[common, series], help="hypercubic d=3..20 and bcc d=3..4")
    p.add_argument("-d", type=_dimensions, default=list(range(3, 21)))
    p.add_argument("--bcc-d", type=_dimensions, default=[3, 4])
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("asympt", parents=[common], help="large-d expansion term by term")
    p.add_argument("-d", type=_dimensions, required=True)
    p.add_argument("--order", type=int, default=asymptotic.MAX_ORDER)
    p.set_defaults(func=cmd_asympt)

    p = sub.add_parser("bessel", parents=[common, quad], help="Bessel-integral value (not rigorous)")
    p.add_argument("-d", type=_dimensions, required=True)
    p.set_defaults(func=cmd_bessel)

    p = sub.add_parser("oracle", parents=[common], help="exact tree counts of finite cubes")
    p.add_argument("-d", type=_dimensions, required=True)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--size-cap", type=int, default=kirchhoff.DEFAULT_SIZE_CAP)
    p.add_argument("-K", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("xcheck", parents=[common, quad], help="series vs Bessel vs asymptotic")
    p.add_argument("-d", type=_dimensions, default=[3, 4, 5, 6])
    p.add_argument("-K", type=int, default=None)
    p.set_defaults(func=cmd_xcheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="treeentropy: warning: %(message)s")
    if args.precision is None:
        try:
            args.precision = _default_precision()
        except (ValueError, argparse.ArgumentTypeError) as exc:
            parser.error(f"${PRECISION_ENV}: {exc}")
    try:
        report = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ArithmeticError, ValueError, MemoryError, IndexError) as exc:
        print(f"treeentropy: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    sys.stdout.write(render(report, args.format))
    if args.rigor_required and report.conditional:
        for note in report.notes:
            print(f"treeentropy: not rigorous: {note}", file=sys.stderr)
        return EXIT_NOT_RIGOROUS
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
