"""Base-10 significant-digit and significand arithmetic.

The significand of a positive number is its scale-free part
``S(x) = 10**(log10(x) - floor(log10(x)))``, always in ``[1, 10)``.
Digits are read from the significand rounded to 15 significant decimal
figures.  Rounding first keeps numbers that sit one float ulp away from
a power of ten in the bucket their decimal value names: the stored
double for ``0.1`` is slightly above 1/10, and naive divide-and-shift
would report a significand of 9.999...; here it is exactly 1.0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "MAX_PREFIX_LENGTH",
    "DigitPrefix",
    "mantissa_digits",
    "significand",
    "digit_at",
    "prefix_of",
    "benford_prefix_prob",
]

LN10 = math.log(10.0)

# Digits beyond double precision (~15.95 decimal digits) are noise.
MAX_PREFIX_LENGTH = 15


def mantissa_digits(x: float) -> str:
    """The 15 leading decimal digits of a positive finite number.

    Raises:
        ValueError: ``x`` is zero, negative, or not finite.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"digits are defined for positive finite numbers, got {x!r}")
    mantissa, _, _ = f"{x:.14e}".partition("e")
    return mantissa[0] + mantissa[2:]


def significand(x: float) -> float:
    """Scale-free part of ``x`` in ``[1, 10)``.

    Invariant under multiplication by powers of ten; the result is the
    decimal mantissa of ``x`` rounded to 15 significant figures.

    >>> significand(0.025)
    2.5
    """
    digits = mantissa_digits(x)
    return float(digits[0] + "." + digits[1:])


def digit_at(x: float, i: int) -> int:
    """The ``i``-th significant decimal digit of ``x`` (1-indexed)."""
    if i < 1:
        raise ValueError(f"digit positions are 1-indexed, got {i}")
    if i > MAX_PREFIX_LENGTH:
        raise ValueError(
            f"digit position {i} exceeds double precision ({MAX_PREFIX_LENGTH} digits)"
        )
    return int(mantissa_digits(x)[i - 1])


def prefix_of(x: float, length: int) -> "DigitPrefix":
    """The first ``length`` significant digits of ``x`` as a prefix."""
    if not 1 <= length <= MAX_PREFIX_LENGTH:
        raise ValueError(f"prefix length must be 1..{MAX_PREFIX_LENGTH}, got {length}")
    digits = mantissa_digits(x)[:length]
    return DigitPrefix(tuple(int(c) for c in digits), int(digits))


@dataclass(frozen=True)
class DigitPrefix:
    """A tuple of leading significant digits and its integer reading.

    ``value`` is the digits concatenated as a base-10 integer, so a
    depth-m prefix always satisfies ``10**(m-1) <= value < 10**m``.  The
    significand bucket of the prefix is ``[value/scale, (value+1)/scale)``
    with ``scale = 10**(m-1)``.
    """

    digits: tuple[int, ...]
    value: int = -1

    def __post_init__(self) -> None:
        digits = tuple(int(d) for d in self.digits)
        object.__setattr__(self, "digits", digits)
        if not 1 <= len(digits) <= MAX_PREFIX_LENGTH:
            raise ValueError(
                f"prefix length must be 1..{MAX_PREFIX_LENGTH}, got {len(digits)}"
            )
        if not 1 <= digits[0] <= 9:
            raise ValueError(f"leading digit must be 1..9, got {digits[0]}")
        if any(not 0 <= d <= 9 for d in digits[1:]):
            raise ValueError(f"digits must be 0..9, got {digits}")
        value = 0
        for d in digits:
            value = value * 10 + d
        if self.value == -1:
            object.__setattr__(self, "value", value)
        elif self.value != value:
            raise ValueError(
                f"stored value {self.value} does not match digits {digits} (= {value})"
            )

    @classmethod
    def from_value(cls, value: int) -> "DigitPrefix":
        """Prefix whose digits spell out the positive integer ``value``."""
        if value < 1:
            raise ValueError(f"prefix value must be a positive integer, got {value}")
        return cls(tuple(int(c) for c in str(value)))

    @classmethod
    def parse(cls, text: str) -> "DigitPrefix":
        """Prefix from a digit string such as ``"99"``."""
        if not text.isdigit():
            raise ValueError(f"prefix must be a string of decimal digits, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def depth(self) -> int:
        return len(self.digits)

    @property
    def scale(self) -> int:
        return 10 ** (self.depth - 1)

    def bucket_low(self) -> float:
        """Left edge of the prefix's significand bucket."""
        return self.value / self.scale

    def bucket_high(self) -> float:
        return (self.value + 1) / self.scale

    def log_low(self) -> float:
        """Bucket left edge on the log10 axis, in [0, 1)."""
        return math.log10(self.value) - (self.depth - 1)

    def log_high(self) -> float:
        return math.log10(self.value + 1) - (self.depth - 1)

    def child(self, digit: int) -> "DigitPrefix":
        """Extend this prefix by one trailing digit."""
        return DigitPrefix(self.digits + (int(digit),))

    def __str__(self) -> str:
        return "".join(str(d) for d in self.digits)


def benford_prefix_prob(prefix: DigitPrefix) -> float:
    """Probability that a Benford variable starts with the given digits.

    ``log10(1 + 1/value)``; log1p keeps full precision when the prefix
    is long and ``1/value`` is small.
    """
    return math.log1p(1.0 / prefix.value) / LN10
