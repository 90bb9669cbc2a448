"""Digit-conformity and sum-invariance reports over a dataset.

A report carries, for every depth up to the requested one, the observed
prefix frequencies against the logarithmic law, a Pearson chi-square
statistic with its degrees of freedom, and the mean absolute deviation
of the frequencies; plus the significand sum table at the full depth
with its theoretical reference and the per-prefix expected-sum bounds.

Flagging conventions (the statistics themselves are standard; the
thresholds are documented defaults, not claims): a depth is flagged
when its chi-square exceeds the 99% critical value (Wilson-Hilferty
approximation) or its MAD exceeds a configurable threshold.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

from .digits import DigitPrefix
from .sums import (
    BoundsResult,
    SignificandSumTable,
    empirical_sum_table,
    expected_sum_theoretical,
    theorem_bounds,
)

__all__ = [
    "MAX_REPORT_DEPTH",
    "DEFAULT_MAD_THRESHOLD",
    "DepthStats",
    "AnalysisReport",
    "build_report",
    "render_json",
    "chi_square_critical",
]

LN10 = math.log(10.0)

# Report tables enumerate every prefix per depth; 9*10**5 rows is the
# practical ceiling.
MAX_REPORT_DEPTH = 6

DEFAULT_MAD_THRESHOLD = 0.015

_Z99 = 2.3263478740408408  # standard normal 99% quantile


def chi_square_critical(dof: int, z: float = _Z99) -> float:
    """Wilson-Hilferty approximation to the chi-square quantile."""
    if dof < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {dof}")
    c = 2.0 / (9.0 * dof)
    return dof * (1.0 - c + z * math.sqrt(c)) ** 3


@dataclass
class DepthStats:
    """Observed-vs-expected digit frequencies at one depth."""

    depth: int
    counts: dict[int, int]
    chi_square: float
    dof: int
    critical: float
    mad: float
    flagged: bool


@dataclass
class AnalysisReport:
    source: str
    items: int
    rejected: int
    depth: int
    mad_threshold: float
    tables: list[DepthStats]
    sums: SignificandSumTable
    bounds: list[BoundsResult]
    flags: list[int]
    note: str | None = None
    seed: int | None = None

    @property
    def sum_reference(self) -> float:
        """Exact-law per-item expected sum at the report depth."""
        return expected_sum_theoretical(self.depth)

    @property
    def sum_reference_total(self) -> float:
        return self.items * self.sum_reference

    def to_payload(self) -> dict:
        """JSON-ready dict; top-level keys: dataset, depth, frequencies,
        sums, bounds, flags."""
        dataset = {
            "source": self.source,
            "items": self.items,
            "rejects": self.rejected,
        }
        if self.note is not None:
            dataset["note"] = self.note
        if self.seed is not None:
            dataset["seed"] = self.seed
        frequencies = []
        for stats in self.tables:
            n = max(self.items, 1)
            rows = [
                {
                    "prefix": str(DigitPrefix.from_value(x)),
                    "count": stats.counts.get(x, 0),
                    "observed": stats.counts.get(x, 0) / n,
                    "expected": math.log1p(1.0 / x) / LN10,
                }
                for x in _prefix_range(stats.depth)
            ]
            frequencies.append(
                {
                    "depth": stats.depth,
                    "chi_square": stats.chi_square,
                    "dof": stats.dof,
                    "critical_99": stats.critical,
                    "mad": stats.mad,
                    "mad_threshold": self.mad_threshold,
                    "flagged": stats.flagged,
                    "rows": rows,
                }
            )
        sums = {
            "depth": self.depth,
            "per_item_reference": self.sum_reference,
            "total_reference": self.sum_reference_total,
            "rows": [
                {
                    "prefix": str(DigitPrefix.from_value(x)),
                    "count": self.sums.count_for(x),
                    "sum": self.sums.sum_for(x),
                }
                for x in _prefix_range(self.depth)
            ],
        }
        bounds = {
            "depth": self.depth,
            "rows": [
                {
                    "prefix": str(b.prefix),
                    "lower": b.lower,
                    "upper": b.upper,
                    "relative_gap": b.relative_gap,
                    "total_lower": self.items * b.lower,
                    "total_upper": self.items * b.upper,
                }
                for b in self.bounds
            ],
        }
        return {
            "dataset": dataset,
            "depth": self.depth,
            "frequencies": frequencies,
            "sums": sums,
            "bounds": bounds,
            "flags": self.flags,
        }

    def to_text(self) -> str:
        out = []
        out.append(f"dataset: {self.source} ({self.items} items, {self.rejected} rejected)")
        if self.note:
            out.append(f"note: {self.note}")
        for stats in self.tables:
            verdict = "DEVIATES" if stats.flagged else "ok"
            out.append(
                f"depth {stats.depth}: chi-square {_fmt(stats.chi_square)} "
                f"(dof {stats.dof}, 99% critical {_fmt(stats.critical)}), "
                f"mad {_fmt(stats.mad)} (threshold {_fmt(self.mad_threshold)}) [{verdict}]"
            )
            n = max(self.items, 1)
            out.append("  prefix      count    observed    expected")
            for x in _prefix_range(stats.depth):
                c = stats.counts.get(x, 0)
                out.append(
                    f"  {x:<10d}{c:>9d}  {c / n:>10.6f}  {math.log1p(1.0 / x) / LN10:>10.6f}"
                )
        out.append(
            f"sum table (depth {self.depth}): per-item reference {_fmt(self.sum_reference)}, "
            f"total reference {self.sum_reference_total:.1f}"
        )
        out.append("  prefix      count           sum    total-lower    total-upper")
        bounds_by_value = {b.prefix.value: b for b in self.bounds}
        for x in _prefix_range(self.depth):
            b = bounds_by_value[x]
            out.append(
                f"  {x:<10d}{self.sums.count_for(x):>9d}  {self.sums.sum_for(x):>12.4f}"
                f"  {self.items * b.lower:>13.4f}  {self.items * b.upper:>13.4f}"
            )
        if self.flags:
            out.append("flagged depths: " + ", ".join(str(d) for d in self.flags))
        else:
            out.append("flagged depths: none")
        return "\n".join(out) + "\n"

    def sums_csv(self) -> str:
        lines = ["prefix,count,sum,total_reference"]
        ref = self.sum_reference_total
        for x in _prefix_range(self.depth):
            lines.append(
                f"{DigitPrefix.from_value(x)},{self.sums.count_for(x)},"
                f"{_fmt(self.sums.sum_for(x))},{_fmt(ref)}"
            )
        return "\n".join(lines) + "\n"


def _prefix_range(depth: int) -> range:
    return range(10 ** (depth - 1), 10**depth)


def _fmt(v: float) -> str:
    return f"{v:.10g}"


def build_report(
    values: Iterable[float],
    *,
    depth: int,
    source: str,
    mad_threshold: float = DEFAULT_MAD_THRESHOLD,
    extra_rejects: int = 0,
    note: str | None = None,
    seed: int | None = None,
) -> AnalysisReport | None:
    """Build the conformity report, or None if no item was usable."""
    if not 1 <= depth <= MAX_REPORT_DEPTH:
        raise ValueError(f"report depth must be 1..{MAX_REPORT_DEPTH}, got {depth}")
    table = empirical_sum_table(values, depth)
    if table.total_count == 0:
        return None
    tables = []
    flags = []
    for k in range(1, depth + 1):
        level = table if k == depth else table.aggregated(k)
        stats = _depth_stats(level, mad_threshold)
        tables.append(stats)
        if stats.flagged:
            flags.append(k)
    bounds = [theorem_bounds(DigitPrefix.from_value(x)) for x in _prefix_range(depth)]
    return AnalysisReport(
        source=source,
        items=table.total_count,
        rejected=table.rejected + extra_rejects,
        depth=depth,
        mad_threshold=mad_threshold,
        tables=tables,
        sums=table,
        bounds=bounds,
        flags=flags,
        note=note,
        seed=seed,
    )


def _depth_stats(table: SignificandSumTable, mad_threshold: float) -> DepthStats:
    n = table.total_count
    counts = {value: count for value, count, _ in table.rows()}
    chi_square = 0.0
    mad = 0.0
    cells = 0
    for x in _prefix_range(table.depth):
        p = math.log1p(1.0 / x) / LN10
        expected = n * p
        observed = counts.get(x, 0)
        chi_square += (observed - expected) ** 2 / expected
        mad += abs(observed / n - p)
        cells += 1
    mad /= cells
    dof = cells - 1
    critical = chi_square_critical(dof)
    flagged = chi_square > critical or mad > mad_threshold
    return DepthStats(table.depth, counts, chi_square, dof, critical, mad, flagged)


def _normalize(obj):
    """Round floats to 10 significant digits for stable JSON output."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.10g}")
    if isinstance(obj, dict):
        return {k: _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    return obj


def render_json(payload: dict) -> str:
    """Deterministic JSON: sorted keys, 10-significant-digit floats."""
    return json.dumps(_normalize(payload), sort_keys=True, indent=2) + "\n"
