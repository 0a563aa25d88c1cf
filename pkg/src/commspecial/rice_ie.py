"""Rice Ie-function Ie(k, x).

Defined by

    Ie(k, x) = integral_0^x e^(-t) I_0(k t) dt,   0 <= k <= 1, x >= 0,

equivalently in trigonometric form

    Ie(k, x) = 1/sqrt(1-k^2)
             - (1/pi) integral_0^pi e^(-x(1 - k cos t)) / (1 - k cos t) dt.
"""

from __future__ import annotations

import math

from .errors import ConvergenceError, DomainError
from .hyper import Phi1Args, humbert_phi1
from .kernels import bessel_i, gaussian_q, lower_inc_gamma
from .types import EvalResult, Interval, RiceIeQuery

__all__ = [
    "rice_ie_series",
    "rice_ie_poly",
    "rice_ie_humbert",
    "rice_ie_eval",
    "rice_ie_bounds",
    "rice_ie_trunc_bound",
]


def _series_term(k: float, x: float, l: int) -> float:
    if k == 0.0 and l > 0:
        return 0.0
    lg = 2.0 * l * (math.log(k) - math.log(2.0)) if l > 0 else 0.0
    return math.exp(lg - 2.0 * math.lgamma(l + 1.0)) * lower_inc_gamma(2.0 * l + 1.0, x)


def rice_ie_series(q: RiceIeQuery, tol: float = 1e-16) -> EvalResult:
    """Exact convergent series: sum_l (k/2)^(2l) gamma(2l+1, x) / (l!)^2."""
    if q.x == 0.0:
        return EvalResult(value=0.0, method="series", est_error=0.0, terms=0)
    total = 0.0
    l = 0
    while True:
        t = _series_term(q.k, q.x, l)
        total += t
        if l > 2 and t <= tol * abs(total):
            break
        l += 1
        if l > 100000:
            raise ConvergenceError("rice ie series did not converge")
    return EvalResult(value=total, method="series", est_error=t, terms=l + 1)


def rice_ie_poly(q: RiceIeQuery, L: int = 20) -> EvalResult:
    """Degree-L polynomial-style approximation (weighted series truncation)."""
    if L < 1:
        raise DomainError("poly order must be >= 1")
    total = 0.0
    for l in range(L + 1):
        w = math.exp(
            math.lgamma(L + l) + (1.0 - 2.0 * l) * math.log(L) - math.lgamma(L - l + 1.0)
        )
        total += w * _series_term(q.k, q.x, l)
    return EvalResult(value=total, method="poly", est_error=float("nan"), terms=L + 1)


def rice_ie_humbert(q: RiceIeQuery) -> EvalResult:
    """Closed form via the confluent Appell (Humbert) function:

    Ie(k,x) = 1/sqrt(1-k^2) - e^(-(1+k)x) Phi1(1/2, 1, 1, 2k/(1+k), 2kx) / (1+k)
    """
    if q.k >= 1.0:
        raise DomainError("humbert route requires k < 1")
    phi = humbert_phi1(
        Phi1Args(a=0.5, b=1.0, c=1.0, x=2.0 * q.k / (1.0 + q.k), y=2.0 * q.k * q.x)
    )
    value = 1.0 / math.sqrt(1.0 - q.k * q.k) - math.exp(-(1.0 + q.k) * q.x) * phi / (
        1.0 + q.k
    )
    return EvalResult(value=value, method="humbert", est_error=float("nan"), terms=0)


_METHODS = {
    "series": rice_ie_series,
    "poly": rice_ie_poly,
    "humbert": rice_ie_humbert,
}


def rice_ie_eval(q: RiceIeQuery, method: str = "series", L_or_tol=None) -> EvalResult:
    """Evaluate Ie(k, x) by the named method: series (default), poly, humbert,
    or oracle."""
    if method == "oracle":
        from .quadrature import oracle

        return EvalResult(value=oracle("rice_ie", q), method="oracle", est_error=1e-10, terms=0)
    try:
        fn = _METHODS[method]
    except KeyError:
        raise DomainError(f"unknown rice ie method: {method!r}") from None
    if L_or_tol is None:
        return fn(q)
    if method == "poly":
        return fn(q, L=int(L_or_tol))
    if method == "series":
        return fn(q, tol=float(L_or_tol))
    return fn(q)


def _upper_head(k: float, x: float) -> float:
    """The closed-form upper bound expression for Ie(k, x)."""
    return (
        1.0
        + math.sqrt(k / (2.0 * (1.0 - k))) * (1.0 - 2.0 * gaussian_q(math.sqrt(2.0 * x) * math.sqrt(1.0 - k)))
        - math.exp(-x) * bessel_i(0.0, k * x)
        - math.sqrt(k / (2.0 * (1.0 + k))) * (1.0 - 2.0 * gaussian_q(math.sqrt(2.0 * x) * math.sqrt(1.0 + k)))
    )


def rice_ie_bounds(q: RiceIeQuery) -> Interval:
    """Closed-form two-sided bounds, valid for 0 < k < 1, x > 0."""
    if not (0.0 < q.k < 1.0):
        raise DomainError("bounds require 0 < k < 1")
    if q.x <= 0.0:
        raise DomainError("bounds require x > 0")
    s = math.sqrt(1.0 - q.k * q.k)
    a = math.sqrt(q.x) * math.sqrt(1.0 + s)
    b = math.sqrt(q.x) * math.sqrt(1.0 - s)
    lower = (
        2.0 * gaussian_q(b + a)
        + 2.0 * gaussian_q(b - a)
        - math.exp(-q.x) * bessel_i(0.0, q.k * q.x)
        - 1.0
    ) / s
    return Interval(lower=lower, upper=_upper_head(q.k, q.x))


def rice_ie_trunc_bound(q: RiceIeQuery, L: int) -> float:
    """Upper bound on the truncation error of the degree-L poly route: the
    closed-form upper bound minus the poly partial sum; clipped at zero."""
    if q.k >= 1.0:
        raise DomainError("truncation bound requires k < 1")
    return max(0.0, _upper_head(q.k, q.x) - rice_ie_poly(q, L=L).value)
