"""Fibonacci significand streams at scale.

The fast path works on the log axis: ``log10(F_k) = k*log10(phi) -
log10(sqrt 5) + c_k`` with a correction ``c_k`` that shrinks like
``phi**(-2k)``.  At k = 10**6 the product ``k*log10(phi)`` is around
2*10**5, so a plain double would surrender ~6 fractional digits to the
integer part; the product and reduction are therefore carried in
double-double arithmetic, which keeps well over 25 correct fractional
digits before the final rounding.

The exact path iterates the integer recurrence and reads the
significand off the leading 17 decimal digits, maintaining the
power-of-ten divisor incrementally.  It never converts the full integer
to a string (CPython caps int-to-str at 4300 digits), and it keeps only
the two most recent terms, so memory stays flat.
"""

from __future__ import annotations

import math
from collections.abc import Iterator

__all__ = [
    "MAX_LOGSPACE_COUNT",
    "MAX_EXACT_COUNT",
    "fib_significands_logspace",
    "fib_significands_exact",
    "fib_decimal_digits",
]

MAX_LOGSPACE_COUNT = 10**6
MAX_EXACT_COUNT = 10**5

# log10((1 + sqrt 5)/2) and log10(sqrt 5) as double-double pairs: hi is
# the nearest double, lo the residual; together good to ~32 digits.
_LOG10_PHI_HI = 0.20898764024997873
_LOG10_PHI_LO = -6.831685870127068e-19
_LOG10_SQRT5_HI = 0.34948500216800943
_LOG10_SQRT5_LO = -2.635371155173633e-17

_PHI = (1.0 + math.sqrt(5.0)) / 2.0
_SPLITTER = 134217729.0  # 2**27 + 1, Dekker split constant

# phi**(-2k)/ln(10) < 1e-16 for k >= 40: correction below double precision
_CORRECTION_CUTOFF = 40


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah = _SPLITTER * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLITTER * b
    bh = bh - (bh - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _log10_parts(k: int) -> tuple[float, float]:
    """k*log10(phi) - log10(sqrt 5) as an unevaluated double-double sum."""
    hi, lo = _two_prod(float(k), _LOG10_PHI_HI)
    lo += k * _LOG10_PHI_LO
    hi, err = _two_sum(hi, -_LOG10_SQRT5_HI)
    lo += err - _LOG10_SQRT5_LO
    return hi, lo


def _significand_at(k: int) -> float:
    if k <= 2:
        return 1.0
    hi, lo = _log10_parts(k)
    if k < _CORRECTION_CUTOFF:
        sign = 1.0 if k % 2 == 0 else -1.0
        lo += math.log10(1.0 - sign * _PHI ** (-2 * k))
    frac = (hi - math.floor(hi)) + lo
    if frac < 0.0:
        frac += 1.0
    elif frac >= 1.0:
        frac -= 1.0
    s = 10.0**frac
    return s if s < 10.0 else math.nextafter(10.0, 1.0)


def fib_significands_logspace(count: int) -> Iterator[float]:
    """Significands of F_1..F_count (F_1 = F_2 = 1), fast log-space path.

    Every value lies in [1, 10); terms agree with the exact path to a
    few float ulps.
    """
    if not 1 <= count <= MAX_LOGSPACE_COUNT:
        raise ValueError(f"count must be 1..{MAX_LOGSPACE_COUNT}, got {count}")
    return (_significand_at(k) for k in range(1, count + 1))


def fib_significands_exact(count: int) -> Iterator[float]:
    """Significands of F_1..F_count from the exact integer recurrence.

    The oracle for the log-space path: slower, but digit-exact.  The
    significand is read from the leading 17 decimal digits.
    """
    if not 1 <= count <= MAX_EXACT_COUNT:
        raise ValueError(f"count must be 1..{MAX_EXACT_COUNT}, got {count}")
    return _exact_stream(count)


def _exact_stream(count: int) -> Iterator[float]:
    top = 10**17
    unit = 10**16
    a, b = 0, 1  # F_0, F_1
    divisor = 1
    for _ in range(count):
        a, b = b, a + b
        lead = a // divisor
        # divisor tracks the term's digit count; at most one digit is
        # gained per step, so a single bump keeps the invariant
        if lead >= top:
            divisor *= 10
            lead //= 10
        while lead < unit:
            lead *= 10
        s = lead / unit
        yield s if s < 10.0 else math.nextafter(10.0, 1.0)


def fib_decimal_digits(k: int) -> int:
    """Decimal digit count of F_k, from the log form (no big integers)."""
    if k < 1:
        raise ValueError(f"the sequence is indexed from 1, got {k}")
    if k == 1:
        return 1
    hi, lo = _log10_parts(k)
    return int(math.floor(hi + lo)) + 1
