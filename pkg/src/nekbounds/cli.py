"""``nekbounds`` command line interface.

Exit status: 0 on success, 1 for usage, I/O or parse errors, 2 when the
mathematics does not apply (matrix not Nekrasov, empty mu grid).

TEXT output rounds to 4 decimals with ``format(x, ".4f")``, i.e. round half
to even on the exact binary value.  JSON and CSV carry full precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from pathlib import Path

from . import __version__
from .bounds import full_report, mu_sweep
from .errors import EmptyGrid, NearSingularWarning, NotNekrasov, ParseError, Singular
from .matrix import MatrixFormat, read_matrix
from .nekrasov import classify
from .oracle import exact_inverse_inf_norm

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MATH = 2

MISSING = "--"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    if x is None:
        return MISSING
    if math.isinf(x):
        return "inf"
    return f"{x:.4f}"


def _vec(values) -> str:
    return MISSING if values is None else " ".join(fmt(float(v)) for v in values)


def _list(values):
    return None if values is None else [float(v) for v in values]


def _load(path, input_format):
    fmt_ = None if input_format == "auto" else MatrixFormat(input_format)
    return read_matrix(path, fmt_)


def _exact(A):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NearSingularWarning)
        try:
            res = exact_inverse_inf_norm(A)
        except Singular:
            return None
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return res


# ------------------------------------------------------------ commands


def cmd_classify(args, out) -> int:
    A = _load(args.file, args.input_format)
    prof = classify(A)
    witness_row = None if prof.witness is None else prof.witness + 1
    if args.format == "json":
        payload = {
            "verdict": prof.verdict.value,
            "n": prof.n,
            "r": _list(prof.r),
            "h": _list(prof.h),
            "z": _list(prof.z),
            "h_ratio": _list(prof.h_ratio),
            "margin": prof.margin,
            "witness_row": witness_row,
        }
        out.write(json.dumps(payload) + "\n")
    else:
        lines = [
            f"verdict: {prof.verdict.value}",
            f"n: {prof.n}",
            f"r: {_vec(prof.r)}",
            f"h: {_vec(prof.h)}",
            f"z: {_vec(prof.z)}",
            f"h/|a_ii|: {_vec(prof.h_ratio)}",
            f"margin: {fmt(prof.margin)}",
        ]
        if witness_row is not None:
            lines.append(f"witness: row {witness_row} (|a_ii| <= h_i)")
        out.write("\n".join(lines) + "\n")
    return EXIT_OK if prof.is_nekrasov else EXIT_MATH


def cmd_bounds(args, out) -> int:
    A = _load(args.file, args.input_format)
    report = full_report(A, args.mu)
    if args.mu is not None and report.param_ratio is None:
        print(f"warning: mu={args.mu} does not exceed r_1/|a_11|; scaled bounds omitted",
              file=sys.stderr)
    exact = _exact(A) if args.oracle else None

    if args.format == "json":
        payload = report.to_dict()
        if args.oracle:
            payload["exact"] = None if exact is None else {
                "value": exact.value, "pivot_growth": exact.pivot_growth}
        out.write(json.dumps(payload) + "\n")
        return EXIT_OK

    rows = [("verdict", report.verdict.value)]
    if args.oracle:
        rows.append(("exact", fmt(exact.value if exact else None)))
    rows.append(("varah", fmt(report.varah)))
    rows.append(("baseline_ratio", fmt(report.baseline_ratio)))
    if report.optimal_ratio:
        o = report.optimal_ratio
        rows.append(("optimal_ratio", f"{fmt(o.value)} @ mu={fmt(o.mu)} ({o.case.value})"))
    rows.append(("baseline_diff", fmt(report.baseline_diff)))
    if report.optimal_diff:
        o = report.optimal_diff
        rows.append(("optimal_diff", f"{fmt(o.value)} @ mu={fmt(o.mu)} ({o.case.value})"))
    if report.param_ratio:
        rows.append(("param_ratio", f"{fmt(report.param_ratio.value)} @ mu={fmt(report.param_ratio.mu)}"))
        rows.append(("param_diff", f"{fmt(report.param_diff.value)} @ mu={fmt(report.param_diff.mu)}"))
    rows.append(("margin", fmt(report.margin)))
    width = max(len(k) for k, _ in rows)
    out.write("".join(f"{k.ljust(width)}  {v}\n" for k, v in rows))
    return EXIT_OK


TABLE_ROWS = (
    ("exact", "Exact"),
    ("varah", "Varah"),
    ("baseline_ratio", "Baseline ratio"),
    ("optimal_ratio", "Optimal ratio"),
    ("baseline_diff", "Baseline diff"),
    ("optimal_diff", "Optimal diff"),
)


def table_column(A) -> dict:
    """One column of the comparison table; ``None`` marks an inapplicable cell."""
    exact = _exact(A)
    col = {key: None for key, _ in TABLE_ROWS}
    col["exact"] = exact.value if exact else None
    try:
        rep = full_report(A)
    except NotNekrasov:
        return col
    col.update(
        varah=rep.varah,
        baseline_ratio=rep.baseline_ratio,
        optimal_ratio=rep.optimal_ratio.value if rep.optimal_ratio else None,
        baseline_diff=rep.baseline_diff,
        optimal_diff=rep.optimal_diff.value if rep.optimal_diff else None,
    )
    return col


def cmd_table(args, out) -> int:
    names, columns = [], []
    for path in args.files:
        try:
            A = _load(path, args.input_format)
        except (OSError, ParseError) as exc:
            raise _FileFailure(path, exc) from exc
        names.append(Path(path).stem)
        columns.append(table_column(A))

    if args.format == "json":
        out.write(json.dumps({"columns": names,
                              "rows": {key: [c[key] for c in columns] for key, _ in TABLE_ROWS}}) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["row", *names])
        for key, _ in TABLE_ROWS:
            w.writerow([key, *(MISSING if c[key] is None else repr(c[key]) for c in columns)])
    else:
        header = ["Matrix", *names]
        body = [[label, *(fmt(c[key]) for c in columns)] for key, label in TABLE_ROWS]
        widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
        for row in [header, *body]:
            cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
            out.write("  ".join(cells).rstrip() + "\n")
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    A = _load(args.file, args.input_format)
    sweep = mu_sweep(A, args.mu_min, args.mu_max, args.step)
    report = full_report(A)
    if args.format == "json":
        payload = {
            "mu_min": sweep.mu_min, "mu_max": sweep.mu_max, "step": sweep.step,
            "baseline_ratio": report.baseline_ratio,
            "baseline_diff": report.baseline_diff,
            "rows": [{"mu": m, "bound_ratio": b1, "bound_diff": b2} for m, b1, b2 in sweep.rows],
        }
        out.write(json.dumps(payload) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["mu", "bound_ratio", "bound_diff", "baseline_ratio", "baseline_diff"])
        for m, b1, b2 in sweep.rows:
            w.writerow([repr(m), repr(b1), repr(b2),
                        repr(report.baseline_ratio), repr(report.baseline_diff)])
    return EXIT_OK


class _FileFailure(Exception):
    def __init__(self, path, exc):
        self.path = path
        self.exc = exc
        super().__init__(f"{path}: {exc}")


# ------------------------------------------------------------ entry point


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nekbounds",
                description="Bounds on the infinity norm of the inverse of Nekrasov matrices.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_input(sp):
        sp.add_argument("--input-format", choices=["auto", "plain", "mm"], default="auto",
                        help="matrix file format (default: sniff the header)")

    sp = sub.add_parser("classify", help="SDD / Nekrasov classification and row quantities")
    sp.add_argument("file")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    add_input(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("bounds", help="all inverse-norm bounds for one matrix")
    sp.add_argument("file")
    sp.add_argument("--mu", type=float, help="also evaluate the scaled bounds at this mu")
    sp.add_argument("--oracle", action="store_true", help="include the exact ||A^-1||_inf")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    add_input(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("table", help="comparison table over several matrices")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
    add_input(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("sweep", help="scaled bounds on a mu grid, for plotting")
    sp.add_argument("file")
    sp.add_argument("--mu-min", type=float, default=0.5)
    sp.add_argument("--mu-max", type=float, default=2.0)
    sp.add_argument("--step", type=float, default=0.01)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    add_input(sp)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout if out is None else out
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except _FileFailure as exc:
        print(f"nekbounds: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ParseError) as exc:
        print(f"nekbounds: {getattr(args, 'file', '')}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotNekrasov as exc:
        print(f"nekbounds: {exc}", file=sys.stderr)
        return EXIT_MATH
    except EmptyGrid as exc:
        print(f"nekbounds: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        # bad grid arguments and similar
        print(f"nekbounds: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
