"""Foundational scalar special functions.

Gamma family (complete, upper/lower incomplete, Pochhammer), Gaussian Q,
modified Bessel function of the first kind, Marcum Q, and half-integer
rounding helpers.  All functions are pure and operate on Python floats.
"""

from __future__ import annotations

import math
import sys

import mpmath
from scipy import special as sp

from .errors import ConvergenceError, DomainError, RangeError

_LOG_MAX = math.log(sys.float_info.max)

__all__ = [
    "gamma",
    "ln_gamma",
    "upper_inc_gamma",
    "lower_inc_gamma",
    "pochhammer",
    "gaussian_q",
    "bessel_i",
    "marcum_q",
    "half_ceil",
    "half_floor",
]


def gamma(x: float) -> float:
    """Complete gamma function Γ(x) for real x away from its poles."""
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"gamma pole at non-positive integer x={x}")
    return float(sp.gamma(x))


def ln_gamma(x: float) -> float:
    """Natural log of Γ(x), x > 0."""
    if x <= 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return float(sp.gammaln(x))


def upper_inc_gamma(a: float, x: float) -> float:
    """Upper incomplete gamma function Γ(a, x).

    Supports a <= 0 (with x > 0) via the downward recurrence
    Γ(a, x) = (Γ(a+1, x) − x^a e^{−x}) / a.
    """
    if x < 0:
        raise DomainError("upper_inc_gamma requires x >= 0")
    if a > 0:
        return float(sp.gammaincc(a, x) * sp.gamma(a))
    if x == 0:
        raise DomainError("upper_inc_gamma diverges for a <= 0 at x = 0")
    # Walk down from a shape a + k that is positive (or exactly zero,
    # where Γ(0, x) is the exponential integral E1).
    k = math.ceil(-a)
    top = a + k  # in (0, 1], or 0 when a is a non-positive integer
    if top == 0:
        g = float(sp.exp1(x))
    else:
        g = float(sp.gammaincc(top, x) * sp.gamma(top))
    lx = math.log(x)
    s = top
    while s > a + 1e-12:
        s -= 1.0
        g = (g - math.exp(s * lx - x)) / s
    return g


def lower_inc_gamma(a: float, x: float) -> float:
    """Lower incomplete gamma function γ(a, x) for a > 0, x >= 0."""
    if a <= 0:
        raise DomainError("lower_inc_gamma requires a > 0")
    if x < 0:
        raise DomainError("lower_inc_gamma requires x >= 0")
    v = float(sp.gammainc(a, x) * sp.gamma(a))
    if math.isfinite(v):
        return v
    # gamma(a) overflowed; recombine in log space
    p = float(sp.gammainc(a, x))
    if p == 0.0:
        return 0.0 if x == 0.0 else float(mpmath.gammainc(a, 0, x))
    lv = float(sp.gammaln(a)) + math.log(p)
    if lv >= _LOG_MAX:
        raise RangeError(f"lower_inc_gamma overflow at a={a}, x={x}")
    return math.exp(lv)


def pochhammer(a: float, n: float) -> float:
    """Pochhammer symbol (a)_n = Γ(a+n)/Γ(a) with sign tracking."""
    v = float(sp.poch(a, n))
    if math.isnan(v):
        raise DomainError(f"pochhammer undefined at a={a}, n={n} (gamma pole)")
    return v


def gaussian_q(x: float) -> float:
    """One-dimensional Gaussian Q-function Q(x) = erfc(x/√2)/2."""
    return 0.5 * float(sp.erfc(x / math.sqrt(2.0)))


def bessel_i(nu: float, x: float, scaled: bool = False) -> float:
    """Modified Bessel function of the first kind I_nu(x), x >= 0.

    ``scaled`` returns e^{−x} I_nu(x).  Orders down to −1 are accepted;
    the convention I_{−1} ≜ I_1 holds automatically for integer order.
    """
    if x < 0:
        raise DomainError("bessel_i requires x >= 0")
    if nu < -1:
        raise DomainError("bessel_i supports orders nu >= -1")
    if scaled:
        return float(sp.ive(nu, x))
    v = float(sp.iv(nu, x))
    if math.isinf(v):
        raise RangeError(
            f"bessel_i overflow at nu={nu}, x={x}; use scaled=True"
        )
    return v


def marcum_q(m: float, a: float, b: float) -> float:
    """Generalized Marcum Q-function Q_m(a, b) of real order m > 0.

    Series of Poisson-weighted normalized upper incomplete gammas,
    summed to a relative term tolerance of 1e-16.
    """
    if m <= 0:
        raise DomainError("marcum_q requires m > 0")
    if a < 0 or b < 0:
        raise DomainError("marcum_q requires a, b >= 0")
    if b == 0:
        return 1.0
    h = 0.5 * a * a
    y = 0.5 * b * b
    if h == 0:
        return float(sp.gammaincc(m, y))
    # Poisson weight at the mode; sum outward is unnecessary because the
    # weights are accumulated from l = 0 with a tail cut on total mass.
    w = math.exp(-h)
    total = 0.0
    mass = 0.0
    l = 0
    if w == 0.0:
        # Underflow of e^{-h}: start summation at the Poisson mode in
        # log space.
        l0 = int(h)
        logw = -h + l0 * math.log(h) - math.lgamma(l0 + 1)
        # downward sweep
        lw, l = logw, l0
        while l >= 0:
            t = math.exp(lw)
            if t < 1e-18:
                break
            total += t * float(sp.gammaincc(m + l, y))
            mass += t
            lw += math.log(l / h) if l > 0 else 0.0
            l -= 1
        # upward sweep
        lw, l = logw, l0
        while True:
            l += 1
            lw += math.log(h / l)
            t = math.exp(lw)
            if t < 1e-18:
                break
            total += t * float(sp.gammaincc(m + l, y))
            mass += t
        return min(1.0, total)
    while True:
        t = w * float(sp.gammaincc(m + l, y))
        total += t
        mass += w
        rem = max(0.0, 1.0 - mass)
        # Terms are w_l * Q(m+l, y) with Q <= 1 increasing in l, so the
        # tail is bounded by the remaining Poisson mass.
        if l >= h and (
            rem <= 1e-16 * max(total, 1e-300)
            or w <= 1e-18 * max(total, 1e-300)
            or t <= 1e-17 * max(total, 1e-300)
        ):
            break
        l += 1
        w *= h / l
        if l > 100000:
            raise ConvergenceError("marcum_q series failed to converge")
    return min(1.0, total)


def marcum_p(m: float, a: float, b: float) -> float:
    """Complementary Marcum function P_m(a, b) = 1 - Q_m(a, b).

    Computed directly as a Poisson-weighted sum of normalized lower
    incomplete gammas, so small values keep full relative accuracy.
    """
    if m <= 0:
        raise DomainError("marcum_p requires m > 0")
    if a < 0 or b < 0:
        raise DomainError("marcum_p requires a, b >= 0")
    if b == 0:
        return 0.0
    h = 0.5 * a * a
    y = 0.5 * b * b
    if h == 0:
        return float(sp.gammainc(m, y))
    l0 = max(0, int(h))
    logw = -h + l0 * math.log(h) - math.lgamma(l0 + 1) if h > 0 else 0.0
    total = 0.0
    # downward sweep from the Poisson mode
    lw, l = logw, l0
    while l >= 0:
        t = math.exp(lw) * float(sp.gammainc(m + l, y))
        total += t
        if t < 1e-18 * max(total, 1e-300):
            break
        lw += math.log(l / h) if l > 0 else 0.0
        l -= 1
    # upward sweep; gammainc decreases in the order, so terms shrink fast
    lw, l = logw, l0
    while True:
        l += 1
        lw += math.log(h / l)
        t = math.exp(lw) * float(sp.gammainc(m + l, y))
        total += t
        if t < 1e-18 * max(total, 1e-300):
            break
        if l > 100000:
            raise ConvergenceError("marcum_p series failed to converge")
    return min(1.0, total)


def half_ceil(x: float) -> float:
    """Smallest half-integer (odd multiple of 1/2) >= x."""
    return math.ceil(x - 0.5) + 0.5


def half_floor(x: float) -> float:
    """Largest half-integer (odd multiple of 1/2) <= x."""
    return math.floor(x + 0.5) - 0.5
