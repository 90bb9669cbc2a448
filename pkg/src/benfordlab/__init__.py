"""Significant-digit law toolkit.

Digit and significand arithmetic, the logarithmic prefix law,
constructive families that match it down to a chosen digit depth,
significand-sum statistics with their expected-value bounds, Fibonacci
significand streams, and a reporting CLI.
"""

from .digits import (
    MAX_PREFIX_LENGTH,
    DigitPrefix,
    benford_prefix_prob,
    digit_at,
    mantissa_digits,
    prefix_of,
    significand,
)
from .distributions import (
    BenfordReference,
    EdgeConcentrated,
    SineBenford,
    WrappedDensity,
    benford_reference,
    density_curve,
    edge_concentrated,
    wrapped_density,
)
from .fibonacci import (
    MAX_EXACT_COUNT,
    MAX_LOGSPACE_COUNT,
    fib_decimal_digits,
    fib_significands_exact,
    fib_significands_logspace,
)
from .quadrature import QuadratureLimitError, integrate
from .sums import (
    BoundsResult,
    ConvergenceRow,
    NormalizationError,
    SignificandSumTable,
    convergence_report,
    empirical_sum_table,
    expected_sum_quadrature,
    expected_sum_theoretical,
    theorem_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_PREFIX_LENGTH",
    "MAX_LOGSPACE_COUNT",
    "MAX_EXACT_COUNT",
    "DigitPrefix",
    "mantissa_digits",
    "significand",
    "digit_at",
    "prefix_of",
    "benford_prefix_prob",
    "WrappedDensity",
    "BenfordReference",
    "SineBenford",
    "EdgeConcentrated",
    "benford_reference",
    "edge_concentrated",
    "wrapped_density",
    "density_curve",
    "QuadratureLimitError",
    "integrate",
    "NormalizationError",
    "BoundsResult",
    "ConvergenceRow",
    "SignificandSumTable",
    "expected_sum_theoretical",
    "expected_sum_quadrature",
    "theorem_bounds",
    "empirical_sum_table",
    "convergence_report",
    "fib_significands_logspace",
    "fib_significands_exact",
    "fib_decimal_digits",
]
