"""Significand-sum statistics: empirical tables, expected values, and bounds.

For a dataset, the depth-n sum table accumulates the significand of
every item into the bucket of its first n digits.  For the exact
logarithmic law the expected per-item sum over any depth-n bucket is
``10**(1-n)/ln(10)`` regardless of which prefix the bucket belongs to;
for a family that only matches digit masses down to depth n the sum is
confined to a narrow interval around that value, and the interval
tightens by a factor of 10 per extra digit of depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .digits import MAX_PREFIX_LENGTH, DigitPrefix, mantissa_digits
from .distributions import WrappedDensity
from .quadrature import integrate

__all__ = [
    "MAX_CONVERGENCE_DEPTH",
    "NormalizationError",
    "BoundsResult",
    "ConvergenceRow",
    "SignificandSumTable",
    "expected_sum_theoretical",
    "expected_sum_quadrature",
    "theorem_bounds",
    "empirical_sum_table",
    "convergence_report",
]

LN10 = math.log(10.0)

# Full prefix scans grow tenfold per depth; 6 keeps them under a second.
MAX_CONVERGENCE_DEPTH = 6


class NormalizationError(ValueError):
    """A wrapped density whose unit-interval integral is not 1."""


def expected_sum_theoretical(depth: int) -> float:
    """Expected significand sum over any depth-n bucket under the exact
    law: ``10**(1-n)/ln(10)``, independent of the prefix."""
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    return 10.0 ** (1 - depth) / LN10


def expected_sum_quadrature(
    density: WrappedDensity, prefix: DigitPrefix, *, tol: float = 1e-10
) -> float:
    """Expected significand sum over the prefix bucket, by quadrature.

    Integrates ``10**t * density(t)`` across the bucket's log-axis
    interval, splitting at the density's declared breakpoints.

    Raises:
        NormalizationError: the density does not integrate to 1 over [0, 1).
    """
    norm = density.normalization()
    if abs(norm - 1.0) > 1e-8:
        raise NormalizationError(
            f"density {density.description!r} integrates to {norm!r}, not 1"
        )
    lo = prefix.log_low()
    hi = prefix.log_high()
    cuts = [p for p in density.breakpoints if lo < p < hi]
    return integrate(
        lambda t: 10.0**t * density.evaluate(t), lo, hi, tol=tol, breakpoints=cuts
    )


@dataclass(frozen=True)
class BoundsResult:
    """Admissible range of the expected significand sum over one bucket,
    across every family matching the digit masses at that depth.

    ``gap`` is ``upper - lower`` computed directly (one bucket mass at
    the depth's scale), so ``relative_gap`` keeps full precision even
    when the two bounds agree to many digits.
    """

    prefix: DigitPrefix
    lower: float
    upper: float
    gap: float

    def __post_init__(self) -> None:
        if not self.lower < self.upper:
            raise ValueError(f"bounds are not ordered: [{self.lower}, {self.upper}]")

    @property
    def relative_gap(self) -> float:
        """(upper - lower)/lower; algebraically exactly 1/value."""
        return self.gap / self.lower


def theorem_bounds(prefix: DigitPrefix) -> BoundsResult:
    """Expected-sum bounds for a depth-n prefix with value x:
    ``lower = 10**(1-n) * x * log10(1 + 1/x)`` and the gap is one bucket
    mass above it.  log1p keeps the mass accurate for large x."""
    x = prefix.value
    mass = math.log1p(1.0 / x) / LN10
    unit = 10.0 ** (1 - prefix.depth)
    gap = unit * mass
    lower = unit * (x * mass)
    return BoundsResult(prefix, lower, lower + gap, gap)


class _NeumaierSum:
    """Compensated running sum (error-free transformation per add)."""

    __slots__ = ("total", "compensation")

    def __init__(self) -> None:
        self.total = 0.0
        self.compensation = 0.0

    def add(self, value: float) -> None:
        t = self.total + value
        if abs(self.total) >= abs(value):
            self.compensation += (self.total - t) + value
        else:
            self.compensation += (value - t) + self.total
        self.total = t

    def merge(self, other: "_NeumaierSum") -> None:
        self.add(other.total)
        self.compensation += other.compensation

    def value(self) -> float:
        return self.total + self.compensation


class SignificandSumTable:
    """Per-prefix significand sums and counts at a fixed digit depth.

    Items are classified by their 15-digit rounded significand, and the
    rounded value is what gets accumulated, so an item a float ulp away
    from a bucket edge lands in the same bucket on every code path.
    Accumulation is compensated, making totals stable against summation
    order at the level of one float rounding.
    """

    def __init__(self, depth: int):
        if not 1 <= depth <= MAX_PREFIX_LENGTH:
            raise ValueError(f"depth must be 1..{MAX_PREFIX_LENGTH}, got {depth}")
        self.depth = depth
        self.total_count = 0
        self.rejected = 0
        self._sums: dict[int, _NeumaierSum] = {}
        self._counts: dict[int, int] = {}

    def add(self, item: float) -> None:
        """Accumulate one observation; non-positive or non-finite items
        are counted as rejects rather than raising."""
        try:
            digits = mantissa_digits(item)
        except (TypeError, ValueError):
            self.rejected += 1
            return
        value = int(digits[: self.depth])
        acc = self._sums.get(value)
        if acc is None:
            acc = self._sums[value] = _NeumaierSum()
            self._counts[value] = 0
        acc.add(float(digits[0] + "." + digits[1:]))
        self._counts[value] += 1
        self.total_count += 1

    def _key(self, prefix: Union[DigitPrefix, int]) -> int:
        if isinstance(prefix, DigitPrefix):
            if prefix.depth != self.depth:
                raise ValueError(
                    f"prefix depth {prefix.depth} does not match table depth {self.depth}"
                )
            return prefix.value
        return int(prefix)

    def count_for(self, prefix: Union[DigitPrefix, int]) -> int:
        return self._counts.get(self._key(prefix), 0)

    def sum_for(self, prefix: Union[DigitPrefix, int]) -> float:
        acc = self._sums.get(self._key(prefix))
        return acc.value() if acc is not None else 0.0

    def prefix_values(self) -> list[int]:
        """Observed prefix values, ascending."""
        return sorted(self._counts)

    def rows(self) -> Iterator[tuple[int, int, float]]:
        """(prefix value, count, sum) for observed prefixes, ascending."""
        for value in self.prefix_values():
            yield value, self._counts[value], self._sums[value].value()

    def merge(self, other: "SignificandSumTable") -> None:
        """Fold another partition's table into this one (same depth).

        Per-prefix merges happen in ascending prefix order, so merging
        chunked partitions is deterministic regardless of how the input
        was split.
        """
        if other.depth != self.depth:
            raise ValueError(
                f"cannot merge table of depth {other.depth} into depth {self.depth}"
            )
        for value in sorted(other._sums):
            acc = self._sums.get(value)
            if acc is None:
                acc = self._sums[value] = _NeumaierSum()
                self._counts[value] = 0
            acc.merge(other._sums[value])
            self._counts[value] += other._counts[value]
        self.total_count += other.total_count
        self.rejected += other.rejected

    def aggregated(self, depth: int) -> "SignificandSumTable":
        """Re-bucket to a shallower depth by summing over trailing digits."""
        if not 1 <= depth <= self.depth:
            raise ValueError(f"target depth must be 1..{self.depth}, got {depth}")
        out = SignificandSumTable(depth)
        divisor = 10 ** (self.depth - depth)
        for value in sorted(self._sums):
            parent = value // divisor
            acc = out._sums.get(parent)
            if acc is None:
                acc = out._sums[parent] = _NeumaierSum()
                out._counts[parent] = 0
            acc.merge(self._sums[value])
            out._counts[parent] += self._counts[value]
        out.total_count = self.total_count
        out.rejected = self.rejected
        return out


def empirical_sum_table(data: Iterable[float], depth: int) -> SignificandSumTable:
    """Single-pass compensated accumulation of significands by prefix."""
    table = SignificandSumTable(depth)
    for item in data:
        table.add(item)
    return table


@dataclass(frozen=True)
class ConvergenceRow:
    """Bound-gap summary for one digit depth.

    ``worst_gap`` is the largest relative gap over all prefixes at the
    depth (attained at the all-smallest prefix 10..0 and equal to
    ``10**(1-depth)``); ``best_gap`` the smallest (at prefix 99..9).
    The ratio columns show how far the bounds stray from the exact-law
    expected sum; both tend to 1 as the depth grows.
    """

    depth: int
    worst_gap: float
    worst_prefix: int
    best_gap: float
    lower_ratio_min: float
    upper_ratio_max: float


def convergence_report(max_depth: int) -> list[ConvergenceRow]:
    """Scan every prefix at depths 1..max_depth and summarize the bounds.

    The relative gap is evaluated as ``mass / (x * mass)`` -- the bounds
    ratio with the common ``10**(1-n)`` factor cancelled -- which avoids
    the subtraction loss of recomputing it from the bound values.
    """
    if not 1 <= max_depth <= MAX_CONVERGENCE_DEPTH:
        raise ValueError(f"max_depth must be 1..{MAX_CONVERGENCE_DEPTH}, got {max_depth}")
    rows = []
    for depth in range(1, max_depth + 1):
        worst = -math.inf
        worst_prefix = 0
        best = math.inf
        lower_ratio_min = math.inf
        upper_ratio_max = -math.inf
        for x in range(10 ** (depth - 1), 10**depth):
            mass = math.log1p(1.0 / x) / LN10
            scaled = x * mass
            rel = mass / scaled
            if rel > worst:
                worst = rel
                worst_prefix = x
            if rel < best:
                best = rel
            lower_ratio = scaled * LN10
            upper_ratio = ((x + 1) * mass) * LN10
            if lower_ratio < lower_ratio_min:
                lower_ratio_min = lower_ratio
            if upper_ratio > upper_ratio_max:
                upper_ratio_max = upper_ratio
        rows.append(
            ConvergenceRow(
                depth, worst, worst_prefix, best, lower_ratio_min, upper_ratio_max
            )
        )
    return rows
