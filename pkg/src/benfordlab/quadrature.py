"""Adaptive Simpson integration with breakpoint splitting and an evaluation budget."""

from __future__ import annotations

from collections.abc import Callable, Iterable

__all__ = ["QuadratureLimitError", "integrate"]


class QuadratureLimitError(RuntimeError):
    """Raised when an integral exceeds its function-evaluation budget."""


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    tol: float = 1e-10,
    breakpoints: Iterable[float] = (),
    max_evals: int = 1_000_000,
    max_depth: int = 60,
) -> float:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    ``breakpoints`` lists locations where ``f`` is known to kink or
    jump; the interval is split there so every piece is smooth inside.
    Each piece receives a share of ``tol`` proportional to its length
    and is bisected until the Richardson error estimate falls below it.

    Raises:
        QuadratureLimitError: more than ``max_evals`` evaluations needed.
    """
    if a == b:
        return 0.0
    if b < a:
        return -integrate(
            f, b, a, tol=tol, breakpoints=breakpoints,
            max_evals=max_evals, max_depth=max_depth,
        )

    budget = [max_evals]

    def feval(x: float) -> float:
        if budget[0] <= 0:
            raise QuadratureLimitError(
                f"exceeded {max_evals} evaluations integrating over [{a}, {b}]"
            )
        budget[0] -= 1
        return f(x)

    cuts = sorted({float(p) for p in breakpoints if a < p < b})
    edges = [a, *cuts, b]
    span = b - a
    total = 0.0
    for lo, hi in zip(edges, edges[1:]):
        piece_tol = tol * ((hi - lo) / span)
        mid = 0.5 * (lo + hi)
        flo, fmid, fhi = feval(lo), feval(mid), feval(hi)
        whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
        total += _refine(feval, lo, hi, flo, fmid, fhi, whole, piece_tol, max_depth)
    return total


def _refine(feval, lo, hi, flo, fmid, fhi, whole, tol, depth):
    mid = 0.5 * (lo + hi)
    lq = 0.5 * (lo + mid)
    rq = 0.5 * (mid + hi)
    if lq <= lo or rq <= mid or rq >= hi:  # float resolution exhausted
        return whole
    flq = feval(lq)
    frq = feval(rq)
    left = (mid - lo) / 6.0 * (flo + 4.0 * flq + fmid)
    right = (hi - mid) / 6.0 * (fmid + 4.0 * frq + fhi)
    delta = (left + right) - whole
    # 15x is the Richardson factor for a Simpson halving; the roundoff
    # floor stops subdivision from chasing noise below double precision.
    if depth <= 0 or abs(delta) <= max(15.0 * tol, 2e-16 * (abs(left) + abs(right))):
        return left + right + delta / 15.0
    return _refine(feval, lo, mid, flo, flq, fmid, left, 0.5 * tol, depth - 1) + _refine(
        feval, mid, hi, fmid, frq, fhi, right, 0.5 * tol, depth - 1
    )
