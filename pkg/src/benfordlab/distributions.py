"""Constructive digit-law distribution families on the significand range [1, 10).

Three families:

* ``BenfordReference`` -- the logarithmic law itself, pdf 1/(y ln 10).
* ``SineBenford`` -- matches the Benford bucket masses exactly down to a
  chosen digit depth; inside each depth-n bucket the log-axis density is
  a half-sine arch, so digit statistics beyond that depth deviate.
* ``EdgeConcentrated`` -- same bucket masses, but each bucket's log-mass
  is squeezed into a narrow pulse at one bucket edge.  These are the
  near-extremal members used to probe the expected-significand-sum
  bounds.

Families are immutable after construction and carry no random state:
``sample`` maps a caller-supplied uniform variate through the inverse
CDF, so runs are reproducible by seeding the caller's generator.
"""

from __future__ import annotations

import bisect
import math
from collections.abc import Callable
from dataclasses import dataclass, field

from .digits import DigitPrefix
from .quadrature import integrate

__all__ = [
    "WrappedDensity",
    "BenfordReference",
    "SineBenford",
    "EdgeConcentrated",
    "benford_reference",
    "edge_concentrated",
    "wrapped_density",
    "density_curve",
]

LN10 = math.log(10.0)
_HALF_PI = math.pi / 2.0


@dataclass
class WrappedDensity:
    """Density of log10(Y) folded onto the unit interval.

    ``breakpoints`` lists kink and jump locations so integrators can
    split there.  ``normalization()`` is the cached integral over
    [0, 1), which is 1 for any probability density.
    """

    evaluate: Callable[[float], float]
    description: str
    breakpoints: tuple[float, ...] = ()
    _normalization: float | None = field(default=None, repr=False, compare=False)

    def normalization(self) -> float:
        if self._normalization is None:
            self._normalization = integrate(
                self.evaluate, 0.0, 1.0, tol=1e-12, breakpoints=self.breakpoints
            )
        return self._normalization


def _check_variate(u: float) -> None:
    if not 0.0 <= u < 1.0:
        raise ValueError(f"uniform variate must lie in [0, 1), got {u!r}")


class BenfordReference:
    """The exact base-10 significand law: pdf 1/(y ln 10) on [1, 10)."""

    description = "benford"

    def pdf(self, y: float) -> float:
        if not 1.0 <= y < 10.0:
            return 0.0
        return 1.0 / (y * LN10)

    def cdf(self, y: float) -> float:
        if y <= 1.0:
            return 0.0
        if y >= 10.0:
            return 1.0
        return math.log10(y)

    def bucket_mass(self, prefix: DigitPrefix) -> float:
        """Probability of the prefix's significand bucket, any depth."""
        return math.log1p(1.0 / prefix.value) / LN10

    def sample(self, u: float) -> float:
        _check_variate(u)
        y = 10.0 ** u
        return y if y < 10.0 else math.nextafter(10.0, 1.0)

    def wrapped_density(self) -> WrappedDensity:
        return WrappedDensity(lambda t: 1.0, self.description)

    def curve_segments(self) -> list[tuple[float, float]]:
        return [(1.0, 10.0)]


class _BucketedFamily:
    """Geometry shared by families defined bucket-by-bucket at one depth."""

    def __init__(self, depth: int):
        if not isinstance(depth, int) or depth < 1:
            raise ValueError(f"digit depth must be a positive integer, got {depth!r}")
        self.depth = depth
        self._scale = 10 ** (depth - 1)
        self._first = 10 ** (depth - 1)
        self._last = 10**depth - 1
        self._cum: list[float] | None = None
        self._masses: list[float] | None = None

    def bucket_mass(self, prefix: DigitPrefix) -> float:
        """Probability of a depth-matched prefix bucket: log10(1 + 1/value)."""
        if prefix.depth != self.depth:
            raise ValueError(
                f"prefix depth {prefix.depth} does not match family depth {self.depth}"
            )
        return self._mass(prefix.value)

    def _mass(self, value: int) -> float:
        return math.log1p(1.0 / value) / LN10

    def _log_low(self, value: int) -> float:
        return math.log10(value) - (self.depth - 1)

    def _locate(self, y: float) -> int:
        """Bucket value whose interval contains the significand ``y``."""
        x = int(y * self._scale)
        if x < self._first:
            x = self._first
        elif x > self._last:
            x = self._last
        # product rounding can land y a hair outside [x/scale, (x+1)/scale)
        if y < x / self._scale and x > self._first:
            x -= 1
        elif y >= (x + 1) / self._scale and x < self._last:
            x += 1
        return x

    def _locate_log(self, t: float) -> int:
        x = int(10.0 ** (t + (self.depth - 1)))
        if x < self._first:
            x = self._first
        elif x > self._last:
            x = self._last
        if t < self._log_low(x) and x > self._first:
            x -= 1
        elif x < self._last and t >= self._log_low(x + 1):
            x += 1
        return x

    def _cumulative(self) -> tuple[list[float], list[float]]:
        # lazy; compensated running sum so late buckets carry no drift
        if self._cum is None:
            masses = [self._mass(x) for x in range(self._first, self._last + 1)]
            cum = [0.0]
            total = 0.0
            comp = 0.0
            for m in masses:
                t = total + m
                if abs(total) >= m:
                    comp += (total - t) + m
                else:
                    comp += (m - t) + total
                total = t
                cum.append(total + comp)
            self._masses = masses
            self._cum = cum
        return self._cum, self._masses

    def sample(self, u: float) -> float:
        """Inverse-CDF transform of a uniform variate in [0, 1).

        The bucket is found by binary search over the cumulative bucket
        masses; a variate exactly on a boundary goes to the right bucket.
        """
        _check_variate(u)
        cum, masses = self._cumulative()
        i = bisect.bisect_right(cum, u) - 1
        if i >= len(masses):
            i = len(masses) - 1
        v = (u - cum[i]) / masses[i]
        if v < 0.0:
            v = 0.0
        elif v > 1.0:
            v = 1.0
        y = self._inverse_in_bucket(self._first + i, v)
        return y if y < 10.0 else math.nextafter(10.0, 1.0)

    def cdf(self, y: float) -> float:
        if y <= 1.0:
            return 0.0
        if y >= 10.0:
            return 1.0
        cum, masses = self._cumulative()
        x = self._locate(y)
        i = x - self._first
        return cum[i] + masses[i] * self._bucket_cdf(x, y)

    def curve_segments(self) -> list[tuple[float, float]]:
        return [
            (x / self._scale, (x + 1) / self._scale)
            for x in range(self._first, self._last + 1)
        ]

    def _inverse_in_bucket(self, x: int, v: float) -> float:
        raise NotImplementedError

    def _bucket_cdf(self, x: int, y: float) -> float:
        raise NotImplementedError


class SineBenford(_BucketedFamily):
    """Half-sine-arch family matching Benford digit masses to ``depth``.

    Within the bucket of a depth-n prefix with value x, the pdf is
    ``(pi / (2 y ln 10)) * sin(pi * frac)`` where ``frac`` runs from 0
    to 1 across the bucket on the log axis.  Each arch integrates to
    exactly the Benford mass log10(1 + 1/x), and the density vanishes
    continuously at every bucket boundary.
    """

    def __init__(self, depth: int):
        super().__init__(depth)
        self.description = f"sine-{depth}"

    def pdf(self, y: float) -> float:
        if not 1.0 <= y < 10.0:
            return 0.0
        x = self._locate(y)
        frac = self._arch_fraction(x, y)
        return _HALF_PI * math.sin(math.pi * frac) / (y * LN10)

    def _arch_fraction(self, x: int, y: float) -> float:
        # clamped: float rounding can put y a hair outside its bucket
        frac = math.log10(y * self._scale / x) / self._mass(x)
        if frac < 0.0:
            return 0.0
        if frac > 1.0:
            return 1.0
        return frac

    def _bucket_cdf(self, x: int, y: float) -> float:
        frac = self._arch_fraction(x, y)
        return 0.5 * (1.0 - math.cos(math.pi * frac))

    def _inverse_in_bucket(self, x: int, v: float) -> float:
        frac = math.acos(1.0 - 2.0 * v) / math.pi
        return (x / self._scale) * ((x + 1) / x) ** frac

    def wrapped_density(self) -> WrappedDensity:
        def evaluate(t: float) -> float:
            t -= math.floor(t)
            x = self._locate_log(t)
            frac = (t - self._log_low(x)) / self._mass(x)
            if frac < 0.0:
                frac = 0.0
            elif frac > 1.0:
                frac = 1.0
            return _HALF_PI * math.sin(math.pi * frac)

        cuts = tuple(self._log_low(x) for x in range(self._first + 1, self._last + 1))
        return WrappedDensity(evaluate, self.description, cuts)


class EdgeConcentrated(_BucketedFamily):
    """Benford-mass family with each bucket's log-mass in an edge pulse.

    ``side="lower"`` pushes the mass against the bucket's left edge,
    ``side="upper"`` against the right.  The pulse occupies the fraction
    ``eps`` of the bucket's log-width at constant height 1/eps, so every
    bucket keeps its full Benford mass.  As eps -> 0 the expected
    significand sum over a bucket approaches the corresponding extreme
    of the admissible range (the extremes themselves would need point
    masses, which no density attains).
    """

    def __init__(self, depth: int, eps: float, side: str):
        super().__init__(depth)
        if not 0.0 < eps <= 0.5:
            raise ValueError(f"pulse width fraction must be in (0, 0.5], got {eps!r}")
        if side not in ("lower", "upper"):
            raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")
        self.eps = float(eps)
        self.side = side
        self.description = f"edge-{side}-{depth}-eps{eps:g}"

    def _pulse(self, x: int) -> tuple[float, float]:
        """(log-axis start, width) of the pulse inside bucket ``x``."""
        width = self.eps * self._mass(x)
        if self.side == "lower":
            return self._log_low(x), width
        return self._log_low(x + 1) - width, width

    def pdf(self, y: float) -> float:
        if not 1.0 <= y < 10.0:
            return 0.0
        x = self._locate(y)
        start, width = self._pulse(x)
        t = math.log10(y)
        if start <= t < start + width:
            return 1.0 / (self.eps * y * LN10)
        return 0.0

    def _bucket_cdf(self, x: int, y: float) -> float:
        start, width = self._pulse(x)
        v = (math.log10(y) - start) / width
        if v < 0.0:
            return 0.0
        if v > 1.0:
            return 1.0
        return v

    def _inverse_in_bucket(self, x: int, v: float) -> float:
        start, width = self._pulse(x)
        return 10.0 ** (start + v * width)

    def wrapped_density(self) -> WrappedDensity:
        height = 1.0 / self.eps

        def evaluate(t: float) -> float:
            t -= math.floor(t)
            x = self._locate_log(t)
            start, width = self._pulse(x)
            return height if start <= t < start + width else 0.0

        cuts = set()
        for x in range(self._first, self._last + 1):
            start, width = self._pulse(x)
            cuts.add(start)
            cuts.add(start + width)
        return WrappedDensity(
            evaluate, self.description, tuple(sorted(c for c in cuts if 0.0 < c < 1.0))
        )


def benford_reference() -> BenfordReference:
    """The exact logarithmic significand law."""
    return BenfordReference()


def edge_concentrated(depth: int, eps: float, side: str) -> EdgeConcentrated:
    """Edge-pulse family at the given depth; see ``EdgeConcentrated``."""
    return EdgeConcentrated(depth, eps, side)


def wrapped_density(dist) -> WrappedDensity:
    """The distribution's log10 density folded onto [0, 1)."""
    return dist.wrapped_density()


def density_curve(dist, resolution: int = 100) -> list[tuple[float, float]]:
    """Tabulate (y, pdf) pairs covering [1, 10).

    ``resolution`` is the number of samples per smooth segment (per
    bucket arch for the bucketed families, the whole range for the
    reference law); one closing point just below 10 is appended.
    """
    if resolution < 1:
        raise ValueError(f"resolution must be >= 1, got {resolution}")
    points = []
    for lo, hi in dist.curve_segments():
        step = (hi - lo) / resolution
        for j in range(resolution):
            y = lo + j * step
            points.append((y, dist.pdf(y)))
    end = math.nextafter(10.0, 1.0)
    points.append((end, dist.pdf(end)))
    return points
