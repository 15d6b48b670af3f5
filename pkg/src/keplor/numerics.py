"""Shared numerical kernels: bracketed root finding and normal distribution functions.

Everything here is a stateless pure function over IEEE-754 doubles, safe to
call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DomainError, NoConvergence, NonFinite, NoSignChange

__all__ = ["Bracket", "RootResult", "find_root", "normal_cdf", "normal_quantile"]

_SQRT2 = math.sqrt(2.0)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Bracket:
    """Closed interval [lo, hi] expected to enclose a sign change."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError("bracket endpoints must be finite")
        if not self.lo < self.hi:
            raise DomainError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class RootResult:
    """Outcome of a root solve: the root, |f(root)|, and iterations used."""

    root: float
    residual: float
    iterations: int


def _eval_checked(f: Callable[[float], float], x: float) -> float:
    y = f(x)
    if not math.isfinite(y):
        raise NonFinite(f"f({x!r}) evaluated to {y!r}")
    return float(y)


def find_root(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float = 1e-12,
    fprime: Optional[Callable[[float], float]] = None,
    max_iter: int = 100,
) -> RootResult:
    """Solve f(x) = 0 inside a sign-change bracket.

    A safeguarded hybrid: a Newton step is taken whenever its candidate lands
    strictly inside the current bracket, otherwise the step degrades to
    bisection.  The bracket is tightened after every evaluation, so the
    iteration terminates for any continuous f.

    Parameters
    ----------
    f : callable
        Continuous function with f(lo) and f(hi) of opposite sign.
    bracket : Bracket
        Initial enclosure of the root.
    tol : float
        Stop once |f(x)| <= tol or the enclosure width falls below tol.
    fprime : callable, optional
        Analytic derivative.  When omitted, a central finite difference with
        step 1e-6 * max(1, |x|) is used.
    max_iter : int
        Iteration budget; NoConvergence past it.

    Returns
    -------
    RootResult
        The root always lies inside the initial bracket.

    Raises
    ------
    NoSignChange
        If f has the same nonzero sign at both endpoints.
    NonFinite
        If any evaluation of f returns NaN or an infinity.
    NoConvergence
        If the budget is exhausted (cannot happen for continuous f with the
        default budget, kept as a hard backstop).
    """
    if not (math.isfinite(tol) and tol > 0.0):
        raise DomainError(f"tol must be a positive finite real, got {tol!r}")
    lo, hi = float(bracket.lo), float(bracket.hi)
    flo = _eval_checked(f, lo)
    if flo == 0.0:
        return RootResult(lo, 0.0, 0)
    fhi = _eval_checked(f, hi)
    if fhi == 0.0:
        return RootResult(hi, 0.0, 0)
    if (flo > 0.0) == (fhi > 0.0):
        raise NoSignChange(
            f"no sign change over [{lo}, {hi}]: f(lo)={flo!r}, f(hi)={fhi!r}"
        )

    def slope(x: float) -> float:
        if fprime is not None:
            return float(fprime(x))
        h = 1e-6 * max(1.0, abs(x))
        return (_eval_checked(f, x + h) - _eval_checked(f, x - h)) / (2.0 * h)

    x = 0.5 * (lo + hi)
    for iteration in range(1, max_iter + 1):
        fx = _eval_checked(f, x)
        if abs(fx) <= tol:
            return RootResult(x, abs(fx), iteration)
        if (fx > 0.0) == (fhi > 0.0):
            hi, fhi = x, fx
        else:
            lo, flo = x, fx
        if hi - lo <= tol:
            return RootResult(x, abs(fx), iteration)
        d = slope(x)
        use_newton = math.isfinite(d) and d != 0.0
        if use_newton:
            candidate = x - fx / d
            use_newton = lo < candidate < hi
        x = candidate if use_newton else 0.5 * (lo + hi)
    raise NoConvergence(f"find_root: no convergence in {max_iter} iterations")


def normal_cdf(x: float) -> float:
    """Standard normal CDF, evaluated through the complementary error function."""
    if math.isnan(x):
        raise DomainError("normal_cdf requires a non-NaN argument")
    return 0.5 * math.erfc(-x / _SQRT2)


# Rational approximation of the normal quantile (P. J. Acklam, 2003),
# relative error < 1.15e-9 on its own; one Newton step below tightens it.
_QA = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_QB = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_QC = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_QD = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)
_Q_TAIL = 0.02425


def _quantile_tail(q: float) -> float:
    c0, c1, c2, c3, c4, c5 = _QC
    d0, d1, d2, d3 = _QD
    num = ((((c0 * q + c1) * q + c2) * q + c3) * q + c4) * q + c5
    den = (((d0 * q + d1) * q + d2) * q + d3) * q + 1.0
    return num / den


def normal_quantile(p: float) -> float:
    """Inverse of normal_cdf on (0, 1).

    Acklam's rational approximation refined by one Newton step on normal_cdf;
    absolute error below 1e-9 across the open unit interval.
    """
    if math.isnan(p) or not 0.0 < p < 1.0:
        raise DomainError(f"normal_quantile requires 0 < p < 1, got {p!r}")
    if p < _Q_TAIL:
        x = _quantile_tail(math.sqrt(-2.0 * math.log(p)))
    elif p > 1.0 - _Q_TAIL:
        x = -_quantile_tail(math.sqrt(-2.0 * math.log(1.0 - p)))
    else:
        a0, a1, a2, a3, a4, a5 = _QA
        b0, b1, b2, b3, b4 = _QB
        q = p - 0.5
        r = q * q
        num = (((((a0 * r + a1) * r + a2) * r + a3) * r + a4) * r + a5) * q
        den = ((((b0 * r + b1) * r + b2) * r + b3) * r + b4) * r + 1.0
        x = num / den
    # One Newton step; skipped in the far tails where the density underflows.
    half_x2 = 0.5 * x * x
    if half_x2 < 700.0:
        pdf = math.exp(-half_x2) / _SQRT_TWO_PI
        if pdf > 0.0:
            x -= (normal_cdf(x) - p) / pdf
    return x
