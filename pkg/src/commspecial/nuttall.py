"""Evaluation routes, bounds, and inversion for the Nuttall Q-function.

Q_{m,n}(a,b) = ∫_b^∞ x^m e^{−(x²+a²)/2} I_n(ax) dx.

Routes
------
``kdf``     closed form: a Kummer ₁F₁ term minus an F^{1,0}_{1,1} term.
``series``  exact single series in upper incomplete gammas.
``poly``    p-term polynomial approximation of the Bessel factor.
``oracle``  adaptive quadrature of the defining integral.

A half-integer-order closed form (finite sum of incomplete gammas,
derived from the terminating Bessel expansion) supports the truncation
bound, which majorizes the poly-route error at half-integer-rounded
orders.
"""

from __future__ import annotations

import math

from scipy import optimize as _opt
from scipy import special as sp

from .errors import ConvergenceError, DomainError, LossOfSignificanceError
from .hyper import KdfArgs, kdf_f1110, kdf_f1110_highprec, kummer_1f1
from .kernels import (
    bessel_i,
    half_ceil,
    half_floor,
    lower_inc_gamma,
    marcum_q,
    upper_inc_gamma,
)
from .quadrature import oracle
from .types import EvalResult, NuttallQuery

__all__ = [
    "nuttall_eval",
    "nuttall_series",
    "nuttall_poly",
    "nuttall_kdf",
    "nuttall_halfint",
    "nuttall_upper",
    "nuttall_trunc_bound",
    "nuttall_recursion_check",
    "normalized_nuttall",
    "inverse_nuttall_b",
    "marcum_series_check",
]

_LN2 = math.log(2.0)


def _log_uig(s: float, y: float) -> float:
    """log Γ(s, y) for s > 0 (−inf when it underflows)."""
    q = float(sp.gammaincc(s, y))
    if q <= 0.0:
        return -math.inf
    return float(sp.gammaln(s)) + math.log(q)


def _series_term_log(m: float, n: float, a: float, b: float, l: int) -> float:
    """log of term l of the exact series (all terms are positive)."""
    s = 0.5 * (m + n + 2 * l + 1)
    y = 0.5 * b * b
    pref = (
        (n + 2 * l) * math.log(a)
        - 0.5 * a * a
        - math.lgamma(l + 1)
        - math.lgamma(n + l + 1)
        - 0.5 * (n - m + 2 * l + 1) * _LN2
    )
    if s > 0:
        return pref + _log_uig(s, y)
    if b == 0:
        raise DomainError("Nuttall series diverges at b = 0 for m + n <= -1")
    g = upper_inc_gamma(s, y)  # positive for all real s, y > 0
    return pref + math.log(g)


def nuttall_series(q: NuttallQuery, tol: float = 1e-16) -> EvalResult:
    """Exact series Σ_l a^{n+2l} e^{−a²/2} Γ((m+n+2l+1)/2, b²/2) / (l! Γ(n+l+1) 2^{(n−m+2l+1)/2})."""
    m, n, a, b = q.m, q.n, q.a, q.b
    if a < 0:
        raise DomainError("nuttall_series requires a >= 0")
    if a == 0:
        # Only the Bessel order-0 term survives: I_n(0) = δ_{n0}.
        if n != 0:
            return EvalResult(0.0, "series", 0.0, 0)
        if m <= -1 and b == 0:
            raise DomainError("divergent at a=0, b=0, m <= -1")
        v = 2 ** (0.5 * (m - 1)) * upper_inc_gamma(0.5 * (m + 1), 0.5 * b * b)
        return EvalResult(v, "series", 1e-14 * abs(v), 1)
    total = 0.0
    for l in range(10_000):
        lt = _series_term_log(m, n, a, b, l)
        t = math.exp(lt)
        total += t
        if t <= tol * total and l >= a * a:
            return EvalResult(total, "series", max(t, tol * total), l + 1)
    raise ConvergenceError("Nuttall exact series did not converge")


def nuttall_poly(q: NuttallQuery, p: int = 20) -> EvalResult:
    """Polynomial route: p-term approximation with Γ(p+l) p^{1−2l} / (p−l)! weights."""
    if p < 1:
        raise DomainError("poly route requires p >= 1")
    m, n, a, b = q.m, q.n, q.a, q.b
    if a == 0:
        return nuttall_series(q)
    total = 0.0
    for l in range(p + 1):
        lt = _series_term_log(m, n, a, b, l)
        w = (
            math.lgamma(p + l)
            + (1 - 2 * l) * math.log(p)
            - math.lgamma(p - l + 1)
        )
        total += math.exp(lt + w)
    return EvalResult(total, "poly", 0.0, p + 1)


def nuttall_kdf(q: NuttallQuery) -> EvalResult:
    """Closed form: ₁F₁ term minus b^{m+n+1} F^{1,0}_{1,1} term (m+n > −1)."""
    m, n, a, b = q.m, q.n, q.a, q.b
    if m + n <= -1:
        raise DomainError("kdf route requires m + n > -1")
    if a <= 0:
        raise DomainError("kdf route requires a > 0")
    A = 0.5 * (m + n + 1)
    lg_n1 = math.lgamma(n + 1)
    t1 = math.exp(
        n * math.log(a)
        - 0.5 * a * a
        - lg_n1
        - 0.5 * (n - m + 1) * _LN2
        + math.lgamma(A)
    ) * kummer_1f1(A, 1 + n, 0.5 * a * a)
    pre2 = math.exp(
        n * math.log(a)
        + (m + n + 1) * math.log(b)
        - 0.5 * a * a
        - lg_n1
        - math.log(m + n + 1)
        - n * _LN2
    ) if b > 0 else 0.0
    terms = 1
    if pre2 == 0.0:
        f = 0.0
    else:
        args = KdfArgs(A, A + 1.0, n + 1.0, 0.25 * a * a * b * b, -0.5 * b * b)
        try:
            f = kdf_f1110(args)
        except LossOfSignificanceError:
            f = kdf_f1110_highprec(args)
        terms = 2
    value = t1 - pre2 * f
    if abs(value) < 1e-8 * abs(t1):
        # The outer subtraction itself cancelled; recompute at high precision.
        import mpmath

        with mpmath.workdps(50):
            am, nm, bm = mpmath.mpf(a), mpmath.mpf(n), mpmath.mpf(b)
            Am = mpmath.mpf(m + n + 1) / 2
            t1m = (
                am**nm
                * mpmath.gamma(Am)
                * mpmath.hyp1f1(Am, 1 + nm, am**2 / 2)
                / (
                    mpmath.gamma(nm + 1)
                    * mpmath.e ** (am**2 / 2)
                    * mpmath.mpf(2) ** ((nm - m + 1) / 2)
                )
            )
            f2 = kdf_f1110_highprec(
                KdfArgs(float(Am), float(Am) + 1.0, n + 1.0, 0.25 * a * a * b * b, -0.5 * b * b)
            )
            pre2m = (
                am**nm
                * bm ** (m + n + 1)
                / (
                    mpmath.gamma(nm + 1)
                    * (m + n + 1)
                    * mpmath.mpf(2) ** nm
                    * mpmath.e ** (am**2 / 2)
                )
            )
            value = float(t1m - pre2m * mpmath.mpf(f2))
    return EvalResult(value, "kdf", 1e-11 * max(abs(t1), abs(value)), terms)


def _tail_integral(l: int, c: float) -> float:
    """∫_c^∞ u^l e^{−u²/2} du for integer l >= 0 and any real c."""
    s = 0.5 * (l + 1)
    if c >= 0:
        return 2 ** (0.5 * (l - 1)) * upper_inc_gamma(s, 0.5 * c * c)
    g = lower_inc_gamma(s, 0.5 * c * c)
    return 2 ** (0.5 * (l - 1)) * (math.gamma(s) + (-1.0) ** l * g)


def nuttall_halfint(q: NuttallQuery) -> EvalResult:
    """Finite closed form for half-integer orders m, n with m >= n >= 1/2.

    Derived from the terminating expansion of I_n for half-integer
    order; the result is a double finite sum of complete/incomplete
    gammas at arguments (b ∓ a)²/2 with a sign convention following
    sgn(b − a).
    """
    m, n, a, b = q.m, q.n, q.a, q.b
    if half_ceil(m) != m or half_ceil(n) != n:
        raise DomainError("halfint route requires half-integer m and n")
    if not m >= n >= 0.5:
        raise DomainError("halfint route requires m >= n >= 1/2")
    if a <= 0:
        raise DomainError("halfint route requires a > 0")
    K = int(n - 0.5)
    sign_minus = (-1.0) ** int(n + 0.5)
    total = 0.0
    for k in range(K + 1):
        A_k = math.exp(
            math.lgamma(n + 0.5 + k) - math.lgamma(k + 1) - math.lgamma(n + 0.5 - k)
        )
        P = int(m - k - 0.5)
        coef = A_k / (math.sqrt(2 * math.pi) * 2**k * a ** (k + 0.5))
        s1 = 0.0
        s2 = 0.0
        for l in range(P + 1):
            binom = math.comb(P, l)
            s1 += binom * a ** (P - l) * _tail_integral(l, b - a)
            s2 += binom * (-a) ** (P - l) * _tail_integral(l, b + a)
        total += coef * ((-1.0) ** k * s1 + sign_minus * s2)
    return EvalResult(total, "halfint", 1e-13 * abs(total), K + 1)


_METHODS = {
    "kdf": lambda q, p: nuttall_kdf(q),
    "series": lambda q, p: nuttall_series(q, tol=p if (p and p < 1) else 1e-16),
    "poly": lambda q, p: nuttall_poly(q, int(p) if p else 20),
    "halfint": lambda q, p: nuttall_halfint(q),
    "oracle": lambda q, p: EvalResult(oracle("nuttall", q), "oracle", 1e-10, 0),
}


def nuttall_eval(q: NuttallQuery, method: str = "series", p_or_tol=None) -> EvalResult:
    """Evaluate Q_{m,n}(a, b) by the requested route."""
    if method not in _METHODS:
        raise DomainError(f"unknown nuttall method {method!r}")
    return _METHODS[method](q, p_or_tol)


def nuttall_upper(q: NuttallQuery) -> float:
    """Closed-form upper bound: the complete-integral (G) term of the kdf form.

    Certified empirically on the small-b / b-dominated parameter domain
    of the accompanying accuracy table; returned uncertified elsewhere.
    """
    m, n, a, b = q.m, q.n, q.a, q.b
    if a <= 0 or m + n <= -1:
        raise DomainError("upper bound requires a > 0 and m + n > -1")
    A = 0.5 * (m + n + 1)
    return math.exp(
        n * math.log(a)
        - 0.5 * a * a
        - math.lgamma(n + 1)
        - 0.5 * (n - m + 1) * _LN2
        + math.lgamma(A)
    ) * kummer_1f1(A, 1 + n, 0.5 * a * a)


def _series_upper(q: NuttallQuery) -> float:
    """Rigorous upper bound on Q from the all-positive exact series.

    Term ratios obey t_{l+1}/t_l <= a^2 (s_l + y) / (2 (l+1)(n+l+1))
    with s_l = (m+n+2l+1)/2 and y = b^2/2, using
    Gamma(s+1, y) <= (s + y) Gamma(s, y); the ratio decays like 1/l, so
    once it drops below one a geometric tail closes the bracket.
    """
    m, n, a, b = q.m, q.n, q.a, q.b
    y = 0.5 * b * b
    total = 0.0
    for l in range(100_000):
        t = math.exp(_series_term_log(m, n, a, b, l))
        total += t
        s = 0.5 * (m + n + 2 * l + 1)
        rho = a * a * (max(s, 0.0) + y) / (2.0 * (l + 1.0) * (n + l + 1.0))
        if rho < 1.0 and t * rho / (1.0 - rho) <= 1e-12 * max(total, 1e-300):
            return total + t * rho / (1.0 - rho)
    raise ConvergenceError("Nuttall series tail bound did not converge")


def nuttall_trunc_bound(q: NuttallQuery, p: int) -> float:
    """Majorant of the poly-route truncation error |Q − poly(p)|.

    Reference value: a rigorous series upper bound on Q (partial sum plus
    a geometric tail majorant); the subtracted partial sum is the p-term
    poly value at the queried orders.  Rounding the orders to a
    half-integer closed form is not used as a reference because Q is not
    monotone in the Bessel order below 1/2.
    """
    if p < 1:
        raise DomainError("trunc bound requires p >= 1")
    partial = nuttall_poly(q, p).value
    return max(0.0, _series_upper(q) - partial)


def nuttall_recursion_check(m: int, n: int, a: float, b: float) -> float:
    """Residual of Q_{m,n} = a Q_{m−1,n+1} + b^{m−1} e^{−(a²+b²)/2} I_n(ab) + (m+n−1) Q_{m−2,n}."""
    if m < 2 or n < 1:
        raise DomainError("recursion check requires integers m >= 2, n >= 1")
    lhs = oracle("nuttall", NuttallQuery(m, n, a, b))
    t_bessel = (
        b ** (m - 1) * bessel_i(n, a * b, scaled=True) * math.exp(a * b - 0.5 * (a * a + b * b))
        if b > 0
        else 0.0
    )
    rhs = (
        a * oracle("nuttall", NuttallQuery(m - 1, n + 1, a, b))
        + t_bessel
        + (m + n - 1) * oracle("nuttall", NuttallQuery(m - 2, n, a, b))
    )
    return lhs - rhs


def normalized_nuttall(q: NuttallQuery, method: str = "series", p_or_tol=None) -> EvalResult:
    """Normalized form 𝒬_{m,n} = Q_{m,n}/aⁿ; equals Marcum Q_m when n = m−1."""
    if q.a == 0 and q.n != 0:
        raise DomainError("normalized form undefined at a = 0 with n != 0")
    r = nuttall_eval(q, method, p_or_tol)
    scale = q.a**q.n if q.a > 0 else 1.0
    return EvalResult(r.value / scale, r.method, r.est_error / scale, r.terms)


def inverse_nuttall_b(m: float, n: float, a: float, target: float) -> float:
    """Solve Q_{m,n}(a, b) = target for b (Q is strictly decreasing in b)."""
    if target <= 0:
        raise DomainError("inverse requires a positive target")
    if m + n <= -1:
        raise DomainError("Q_{m,n}(a, 0) diverges for m + n <= -1")
    q0 = nuttall_series(NuttallQuery(m, n, a, 0.0)).value
    if target > q0 * (1 + 1e-12):
        raise DomainError(f"target {target} exceeds Q_(m,n)(a,0) = {q0}")
    if target >= q0:
        return 0.0

    def f(b: float) -> float:
        return nuttall_series(NuttallQuery(m, n, a, b)).value - target

    hi = 1.0
    while f(hi) > 0:
        hi *= 2.0
        if hi > 1e6:
            raise ConvergenceError("could not bracket inverse Nuttall root")
    b = float(_opt.brentq(f, 0.0, hi, xtol=1e-300, rtol=8.9e-16, maxiter=200))
    if abs(f(b)) > 1e-10 * target:
        raise ConvergenceError("inverse Nuttall did not reach tolerance")
    return b


def marcum_series_check(m: float, a: float, b: float) -> float:
    """|marcum_q − normalized Nuttall at n = m−1| (series route)."""
    q = NuttallQuery(m, m - 1.0, a, b)
    return abs(marcum_q(m, a, b) - normalized_nuttall(q).value)
