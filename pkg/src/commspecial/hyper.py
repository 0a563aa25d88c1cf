"""One- and two-variable hypergeometric kernels.

Kummer 1F1, Gauss 2F1 (|x| < 1), Humbert Phi1, and the two-variable
double series F^{1,0}_{1,1}(a; c : b; x, y) (a Kampé-de-Fériet special
case).  Both double series are summed along diagonals l + i = s, where
terms are of comparable magnitude, with compensated accumulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import ConvergenceError, DomainError, LossOfSignificanceError

__all__ = [
    "Phi1Args",
    "KdfArgs",
    "kummer_1f1",
    "gauss_2f1",
    "humbert_phi1",
    "kdf_f1110",
    "kdf_f1110_highprec",
]

_MAX_TERMS = 10_000
_MAX_DIAGONALS = 10_000


@dataclass(frozen=True)
class Phi1Args:
    """Arguments of the Humbert (confluent Appell) function Φ₁(a,b,c;x,y)."""

    a: float
    b: float
    c: float
    x: float
    y: float

    def __post_init__(self) -> None:
        if abs(self.x) >= 1:
            raise DomainError("Phi1 requires |x| < 1")
        if self.c <= 0 and self.c == math.floor(self.c):
            raise DomainError("Phi1 requires c not a non-positive integer")


@dataclass(frozen=True)
class KdfArgs:
    """Arguments of F^{1,0}_{1,1}(a; c : b; x, y)."""

    a: float
    c: float
    b: float
    x: float
    y: float

    def __post_init__(self) -> None:
        for name in ("b", "c"):
            v = getattr(self, name)
            if v <= 0 and v == math.floor(v):
                raise DomainError(f"KdfArgs requires {name} not a non-positive integer")


def _check_lower(b: float, name: str = "b") -> None:
    if b <= 0 and b == math.floor(b):
        raise DomainError(f"{name} must not be a non-positive integer")


def _series_1f1(a: float, b: float, x: float, rel_tol: float) -> float:
    term = 1.0
    total = 1.0
    comp = 0.0  # Kahan compensation
    for l in range(_MAX_TERMS):
        term *= (a + l) * x / ((b + l) * (l + 1))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= rel_tol * abs(total) and l > abs(x):
            return total
    raise ConvergenceError("1F1 series did not converge")


def kummer_1f1(a: float, b: float, x: float) -> float:
    """Kummer confluent hypergeometric function ₁F₁(a; b; x).

    Negative arguments are routed through the Kummer transformation
    ₁F₁(a;b;x) = e^x ₁F₁(b−a; b; −x) to avoid alternating-series
    cancellation.
    """
    _check_lower(b)
    if x == 0:
        return 1.0
    if a == b:
        return math.exp(x)
    if x < 0:
        return math.exp(x) * _series_1f1(b - a, b, -x, 1e-16)
    return _series_1f1(a, b, x, 1e-16)


def gauss_2f1(a: float, b: float, c: float, x: float) -> float:
    """Gauss hypergeometric function ₂F₁(a, b; c; x), |x| < 1 only."""
    _check_lower(c, "c")
    if abs(x) >= 1:
        raise DomainError("gauss_2f1 requires |x| < 1 (no analytic continuation)")
    term = 1.0
    total = 1.0
    comp = 0.0
    for l in range(100_000):
        term *= (a + l) * (b + l) * x / ((c + l) * (l + 1))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= 1e-16 * abs(total):
            return total
    raise ConvergenceError("2F1 series did not converge")


def humbert_phi1(args: Phi1Args) -> float:
    """Humbert function Φ₁(a, b, c; x, y) = Σ (a)_{l+i}(b)_l x^l y^i /((c)_{l+i} l! i!)."""
    a, b, c, x, y = args.a, args.b, args.c, args.x, args.y
    if y == 0:
        return gauss_2f1(a, b, c, x)
    if x == 0:
        return kummer_1f1(a, c, y)
    # R[l] = (b)_l x^l y^{s-l} / (l! (s-l)!) for the current diagonal s.
    R = [1.0]
    ratio = 1.0  # (a)_s / (c)_s
    total = 1.0
    comp = 0.0
    small = 0
    for s in range(1, _MAX_DIAGONALS):
        newR = [0.0] * (s + 1)
        for l in range(s):
            newR[l] = R[l] * y / (s - l)
        newR[s] = R[s - 1] * x * (b + s - 1) / s
        R = newR
        ratio *= (a + s - 1) / (c + s - 1)
        diag = ratio * math.fsum(R)
        yk = diag - comp
        t = total + yk
        comp = (t - total) - yk
        total = t
        if abs(diag) < 1e-16 * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise ConvergenceError("Phi1 diagonal series did not converge")


def kdf_f1110(args: KdfArgs, with_peak: bool = False):
    """F^{1,0}_{1,1}(a; c : b; x, y) = Σ (a)_{l+i} x^l y^i /((c)_{l+i} (b)_l l! i!).

    With ``with_peak=True`` returns ``(value, peak)`` where ``peak`` is the
    largest magnitude the running total reached; the ratio peak/|value|
    measures digits lost to cancellation.

    Raises
    ------
    LossOfSignificanceError
        When cancellation leaves the running total below 1e-8 times the
        largest magnitude it reached during accumulation.  The partially
        cancelled value is attached for diagnostic use.
    """
    a, c, b, x, y = args.a, args.c, args.b, args.x, args.y
    if x == 0 and y == 0:
        return (1.0, 1.0) if with_peak else 1.0
    # R[l] = x^l y^{s-l} / ((b)_l l! (s-l)!) for the current diagonal s.
    R = [1.0]
    ratio = 1.0  # (a)_s / (c)_s
    total = 1.0
    comp = 0.0
    peak = 1.0
    small = 0
    for s in range(1, _MAX_DIAGONALS):
        newR = [0.0] * (s + 1)
        for l in range(s):
            newR[l] = R[l] * y / (s - l)
        newR[s] = R[s - 1] * x / (s * (b + s - 1))
        R = newR
        ratio *= (a + s - 1) / (c + s - 1)
        diag = ratio * math.fsum(R)
        yk = diag - comp
        t = total + yk
        comp = (t - total) - yk
        total = t
        # intra-diagonal cancellation (alternating signs for y < 0) also
        # destroys digits, so the peak tracks the absolute-value mass too
        peak = max(peak, abs(total), abs(ratio) * sum(abs(v) for v in R))
        if abs(diag) < 1e-16 * max(abs(total), 1e-300):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    else:
        raise ConvergenceError("F^{1,0}_{1,1} diagonal series did not converge")
    if abs(total) < 1e-8 * peak:
        raise LossOfSignificanceError(
            f"F^(1,0)_(1,1) cancelled from peak {peak:.3e} to {total:.3e}",
            value=total,
        )
    return (total, peak) if with_peak else total


def kdf_f1110_highprec(args: KdfArgs) -> float:
    """Extended-precision evaluation of F^{1,0}_{1,1} for cancelling sums.

    Working precision is raised until the digits lost to cancellation
    leave at least 20 significant digits in the result.
    """
    a, c, b, x, y = args.a, args.c, args.b, args.x, args.y
    dps = 40
    for _ in range(6):
        with mpmath.workdps(dps):
            am, cm, bm = mpmath.mpf(a), mpmath.mpf(c), mpmath.mpf(b)
            xm, ym = mpmath.mpf(x), mpmath.mpf(y)
            R = [mpmath.mpf(1)]
            ratio = mpmath.mpf(1)
            total = mpmath.mpf(1)
            peak = mpmath.mpf(1)
            small = 0
            for s in range(1, _MAX_DIAGONALS):
                newR = [mpmath.mpf(0)] * (s + 1)
                for l in range(s):
                    newR[l] = R[l] * ym / (s - l)
                newR[s] = R[s - 1] * xm / (s * (bm + s - 1))
                R = newR
                ratio *= (am + s - 1) / (cm + s - 1)
                diag = ratio * mpmath.fsum(R)
                total += diag
                peak = max(peak, abs(total), abs(ratio) * mpmath.fsum(abs(v) for v in R))
                if abs(diag) < mpmath.mpf(10) ** (-dps) * max(abs(total), peak * mpmath.mpf(10) ** (-dps)):
                    small += 1
                    if small >= 3:
                        break
                else:
                    small = 0
            else:
                raise ConvergenceError("F^{1,0}_{1,1} did not converge at high precision")
            if total == 0:
                lost = dps
            else:
                lost = max(0.0, float(mpmath.log10(peak / abs(total))))
            if lost + 20 <= dps:
                return float(total)
        dps = int(lost) + 40
    raise ConvergenceError("F^{1,0}_{1,1} high-precision retry budget exhausted")
