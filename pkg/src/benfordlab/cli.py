"""Command-line front end.

Subcommands: analyze (digit-conformity report over a dataset),
fibonacci (Fibonacci significand sum table and dump), bounds
(expected-sum bounds for one prefix), density (curve export), sample
(inverse-CDF sampling), verify (self-check suite).

Exit codes: 0 success, 1 failed verification, 2 unreadable or
unparseable input, 3 no usable data items.
"""

from __future__ import annotations

import argparse
import csv
import math
import random
import sys

from .digits import DigitPrefix, benford_prefix_prob
from .distributions import (
    BenfordReference,
    EdgeConcentrated,
    SineBenford,
    density_curve,
)
from .fibonacci import fib_significands_exact, fib_significands_logspace
from .report import DEFAULT_MAD_THRESHOLD, build_report, render_json
from .sums import (
    convergence_report,
    expected_sum_quadrature,
    expected_sum_theoretical,
    theorem_bounds,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_EMPTY_DATASET = 3

LN10 = math.log(10.0)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="benfordlab",
        description="Significant-digit law analysis: conformity reports, "
        "significand-sum tables, expected-sum bounds, and constructive "
        "digit-matched distribution families.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampling commands")
    parser.add_argument(
        "--tolerance",
        type=float,
        default=DEFAULT_MAD_THRESHOLD,
        help="mean-absolute-deviation threshold used when flagging depths",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="digit-conformity report over a dataset file")
    p.add_argument("input", help="file of one numeric token per line, or CSV with --column")
    p.add_argument("--depth", type=int, default=2, help="prefix depth of the report")
    p.add_argument("--column", help="CSV column name or 0-based index")
    p.add_argument("--csv", dest="csv_out", help="also write the sum table as CSV")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("fibonacci", help="Fibonacci significand sum table")
    p.add_argument("--count", type=int, default=50000, help="number of terms (from F1)")
    p.add_argument("--mode", choices=("logspace", "exact"), default="logspace")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--output", help="dump significands, one per line")
    p.add_argument("--csv", dest="csv_out", help="also write the sum table as CSV")
    p.set_defaults(func=_cmd_fibonacci)

    p = sub.add_parser("bounds", help="expected significand-sum bounds for a prefix")
    p.add_argument("prefix", help="digit string, e.g. 99")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("density", help="tabulate a family's pdf as two-column CSV")
    p.add_argument("--family", choices=("benford", "sine", "edge"), default="sine")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--eps", type=float, default=0.1, help="edge family pulse width")
    p.add_argument("--side", choices=("lower", "upper"), default="lower")
    p.add_argument("--resolution", type=int, default=100, help="points per smooth segment")
    p.add_argument("--output", default="-", help="output path, - for stdout")
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("sample", help="draw inverse-CDF samples from a family")
    p.add_argument("--family", choices=("benford", "sine", "edge"), default="sine")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--side", choices=("lower", "upper"), default="lower")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--output", default="-", help="output path, - for stdout")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("verify", help="run the numeric self-check suite")
    p.add_argument("--max-depth", type=int, default=4, dest="max_depth")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except CliError as err:
        print(f"benfordlab: {err}", file=sys.stderr)
        return err.code
    except ValueError as err:
        print(f"benfordlab: {err}", file=sys.stderr)
        return EXIT_PARSE_ERROR


def _read_dataset(path: str, column: str | None) -> tuple[list[float], int]:
    """Values and reject count from a token-per-line or CSV file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            if column is None:
                tokens = [line.strip() for line in handle]
            else:
                tokens = _csv_column(handle, column)
    except OSError as err:
        raise CliError(EXIT_PARSE_ERROR, f"cannot read {path}: {err}") from err
    values = []
    rejects = 0
    for token in tokens:
        if not token:
            continue
        try:
            values.append(float(token))
        except ValueError:
            rejects += 1
    return values, rejects


def _csv_column(handle, column: str) -> list[str]:
    reader = csv.reader(handle)
    rows = [row for row in reader if row]
    if not rows:
        return []
    if column.isdigit():
        index = int(column)
        start = 0
    else:
        header = rows[0]
        if column not in header:
            raise CliError(EXIT_PARSE_ERROR, f"no column {column!r} in CSV header {header}")
        index = header.index(column)
        start = 1
    out = []
    for row in rows[start:]:
        if index >= len(row):
            raise CliError(EXIT_PARSE_ERROR, f"row {row} has no column {column!r}")
        out.append(row[index].strip())
    return out


def _emit_report(report, ns) -> None:
    if ns.format == "json":
        sys.stdout.write(render_json(report.to_payload()))
    else:
        sys.stdout.write(report.to_text())
    if getattr(ns, "csv_out", None):
        with open(ns.csv_out, "w", encoding="utf-8") as handle:
            handle.write(report.sums_csv())


def _cmd_analyze(ns) -> int:
    values, text_rejects = _read_dataset(ns.input, ns.column)
    report = build_report(
        values,
        depth=ns.depth,
        source=ns.input,
        mad_threshold=ns.tolerance,
        extra_rejects=text_rejects,
    )
    if report is None:
        raise CliError(EXIT_EMPTY_DATASET, f"no usable data items in {ns.input}")
    _emit_report(report, ns)
    return EXIT_OK


_FIB_NOTE = (
    "window F1..FN with F1 = F2 = 1; shifting the window by one term "
    "moves any single sum by less than 10 (one significand)"
)


def _cmd_fibonacci(ns) -> int:
    stream = (
        fib_significands_logspace(ns.count)
        if ns.mode == "logspace"
        else fib_significands_exact(ns.count)
    )
    significands = list(stream)
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as handle:
            handle.writelines(f"{s!r}\n" for s in significands)
    report = build_report(
        significands,
        depth=ns.depth,
        source=f"fibonacci-{ns.mode}[1..{ns.count}]",
        mad_threshold=ns.tolerance,
        note=_FIB_NOTE,
    )
    _emit_report(report, ns)
    return EXIT_OK


def _cmd_bounds(ns) -> int:
    prefix = DigitPrefix.parse(ns.prefix)
    result = theorem_bounds(prefix)
    if ns.format == "json":
        payload = {
            "prefix": str(prefix),
            "lower": result.lower,
            "upper": result.upper,
            "relative_gap": result.relative_gap,
            "reference": expected_sum_theoretical(prefix.depth),
        }
        sys.stdout.write(render_json(payload))
    else:
        print(
            f"prefix {prefix}: lower {result.lower:.10g}, upper {result.upper:.10g}, "
            f"gap ratio {result.relative_gap:.10g}"
        )
    return EXIT_OK


def _make_family(ns):
    if ns.family == "benford":
        return BenfordReference()
    if ns.family == "sine":
        return SineBenford(ns.depth)
    return EdgeConcentrated(ns.depth, ns.eps, ns.side)


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _cmd_density(ns) -> int:
    dist = _make_family(ns)
    points = density_curve(dist, ns.resolution)
    handle, owned = _open_out(ns.output)
    try:
        handle.write("y,pdf\n")
        for y, value in points:
            handle.write(f"{y:.10g},{value:.10g}\n")
    finally:
        if owned:
            handle.close()
    return EXIT_OK


def _cmd_sample(ns) -> int:
    dist = _make_family(ns)
    if ns.count < 1:
        raise CliError(EXIT_PARSE_ERROR, f"sample count must be >= 1, got {ns.count}")
    rng = random.Random(ns.seed)
    handle, owned = _open_out(ns.output)
    try:
        for _ in range(ns.count):
            handle.write(f"{dist.sample(rng.random())!r}\n")
    finally:
        if owned:
            handle.close()
    return EXIT_OK


def _cmd_verify(ns) -> int:
    max_depth = ns.max_depth
    if not 1 <= max_depth <= 6:
        raise CliError(EXIT_PARSE_ERROR, f"--max-depth must be 1..6, got {max_depth}")
    failures = 0

    def report_line(label: str, ok: bool, detail: str) -> None:
        nonlocal failures
        if not ok:
            failures += 1
        print(f"{'PASS' if ok else 'FAIL'}  {label:<58}  {detail}")

    rng = random.Random(ns.seed)

    # exact law: quadrature of the flat wrapped density reproduces the
    # closed-form expected sum on every bucket
    flat = BenfordReference().wrapped_density()
    worst = 0.0
    for depth in range(1, max_depth + 1):
        reference = expected_sum_theoretical(depth)
        values = (
            range(10 ** (depth - 1), 10**depth)
            if depth <= 3
            else (rng.randrange(10 ** (depth - 1), 10**depth) for _ in range(100))
        )
        for x in values:
            got = expected_sum_quadrature(flat, DigitPrefix.from_value(x))
            worst = max(worst, abs(got - reference))
    report_line(
        f"exact-law expected sums match closed form (depth<={max_depth})",
        worst <= 1e-10,
        f"max_err={worst:.3e}",
    )

    # sandwich: every constructed family stays inside the bounds
    worst_violation = 0.0
    checks = 0
    for depth in range(1, min(max_depth, 3) + 1):
        families = [BenfordReference(), SineBenford(depth)]
        for eps in (0.1, 0.01, 0.001):
            families.append(EdgeConcentrated(depth, eps, "lower"))
            families.append(EdgeConcentrated(depth, eps, "upper"))
        densities = [f.wrapped_density() for f in families]
        for x in range(10 ** (depth - 1), 10**depth):
            prefix = DigitPrefix.from_value(x)
            b = theorem_bounds(prefix)
            for density in densities:
                got = expected_sum_quadrature(density, prefix)
                violation = max(b.lower - got, got - b.upper)
                worst_violation = max(worst_violation, violation)
                checks += 1
    report_line(
        "family expected sums inside bounds (depth<=3)",
        worst_violation <= 1e-9,
        f"checks={checks} worst_violation={worst_violation:.3e}",
    )

    # digit-mass marginalization: summing a child digit recovers the parent
    worst = 0.0
    for depth in range(2, min(max_depth, 4) + 1):
        for x in range(10 ** (depth - 2), 10 ** (depth - 1)):
            parent = DigitPrefix.from_value(x)
            total = math.fsum(
                benford_prefix_prob(parent.child(d)) for d in range(10)
            )
            worst = max(worst, abs(total - benford_prefix_prob(parent)))
    report_line(
        f"digit-mass marginalization (depth<={min(max_depth, 4)})",
        worst <= 1e-12,
        f"max_err={worst:.3e}",
    )

    # per-depth normalization of the digit law
    worst = 0.0
    for depth in range(1, min(max_depth, 4) + 1):
        total = math.fsum(
            math.log1p(1.0 / x) / LN10 for x in range(10 ** (depth - 1), 10**depth)
        )
        worst = max(worst, abs(total - 1.0))
    report_line(
        f"per-depth digit-mass normalization (depth<={min(max_depth, 4)})",
        worst <= 1e-12,
        f"max_err={worst:.3e}",
    )

    # bound-gap convergence table
    rows = convergence_report(max_depth)
    identity_ok = True
    print("depth  worst-gap      at-prefix  best-gap       lower/ref   upper/ref")
    for row in rows:
        print(
            f"{row.depth:>5d}  {row.worst_gap:<13.6g} {row.worst_prefix:>9d}  "
            f"{row.best_gap:<13.6g}  {row.lower_ratio_min:<10.8f}  {row.upper_ratio_max:<10.8f}"
        )
        if abs(row.worst_gap * 10 ** (row.depth - 1) - 1.0) > 1e-12:
            identity_ok = False
    report_line(
        f"relative gap equals 10**(1-depth) (depth<={max_depth})",
        identity_ok,
        f"rows={len(rows)}",
    )

    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED
