"""Truncated channel inversion with fixed rate (TIFR) capacity and
optimal cutoff SNR over Rician fading.

Covers single-antenna (SISO) channels, MISO/SIMO eigen-mode truncated
inversion, and MIMO eigen-mode truncated inversion with user-supplied
Wishart-expansion coefficients.  Every closed form composes the Nuttall
Q-function, the incomplete Toronto function, the Marcum Q-function and
incomplete gammas; cutoff SNRs are found by bracketing the root of the
defining condition

    (1 - P_out(g0)) / g0 - integral_{g0}^inf p(g)/g dg = 1,

never by fixed-point iteration.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from scipy import optimize as _opt
from scipy import special as _sp

from .errors import ConvergenceError, DomainError
from .kernels import marcum_q, upper_inc_gamma
from .nuttall import inverse_nuttall_b, nuttall_eval
from .toronto import toronto_eval, toronto_marcum_special
from .types import NuttallQuery, TorontoQuery

__all__ = [
    "RicianChannel",
    "MisoSimoChannel",
    "MimoCoeffs",
    "TifrResult",
    "load_mimo_coeffs",
    "tifr_capacity_rician",
    "optimal_cutoff_rician",
    "em_tifr_miso_simo",
    "optimal_cutoff_miso",
    "mimo_snr_pdf",
    "mimo_em_ti",
    "optimal_cutoff_mimo",
]


@dataclass(frozen=True)
class RicianChannel:
    """Single-antenna Rician channel: Nakagami-n parameter (K = n^2),
    average SNR (linear) and channel bandwidth in Hz."""

    n_rice: float
    gamma_bar: float
    bandwidth_hz: float = 1.0

    def __post_init__(self) -> None:
        if self.n_rice < 0:
            raise DomainError("RicianChannel requires n_rice >= 0")
        if self.gamma_bar <= 0:
            raise DomainError("RicianChannel requires gamma_bar > 0")
        if self.bandwidth_hz <= 0:
            raise DomainError("RicianChannel requires bandwidth_hz > 0")


@dataclass(frozen=True)
class MisoSimoChannel:
    """MISO/SIMO Rician channel: K-factor, the scalar LOS power m^H m,
    antenna count and average SNR (linear)."""

    K: float
    los_power: float
    n_ant: int
    gamma_bar: float

    def __post_init__(self) -> None:
        if self.K <= 0 or self.los_power <= 0 or self.gamma_bar <= 0:
            raise DomainError("MisoSimoChannel requires K, los_power, gamma_bar > 0")
        if self.n_ant < 1:
            raise DomainError("MisoSimoChannel requires n_ant >= 1")

    @property
    def omega(self) -> float:
        return self.K * self.los_power

    @property
    def mu_k(self) -> float:
        return (self.K + 1.0) / self.gamma_bar


@dataclass(frozen=True)
class MimoCoeffs:
    """Externally supplied expansion coefficients of the unordered
    eigenvalue density of a non-central Wishart-type matrix.

    ``m`` x ``n`` antennas (m <= n), ``t`` distinct non-centrality
    eigenvalues ``omega`` (attached to columns j = m-t+1..m of ``c``),
    normalization ``k_norm``; ``d = n - m``.
    """

    m: int
    n: int
    t: int
    omega: tuple
    c: tuple
    k_norm: float

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < self.m:
            raise DomainError("MimoCoeffs requires 1 <= m <= n")
        if not 0 <= self.t <= self.m:
            raise DomainError("MimoCoeffs requires 0 <= t <= m")
        if len(self.omega) != self.t:
            raise DomainError("MimoCoeffs requires len(omega) == t")
        if any(w <= 0 for w in self.omega):
            raise DomainError("MimoCoeffs requires positive omega entries")
        if len(self.c) != self.m or any(len(row) != self.m for row in self.c):
            raise DomainError("MimoCoeffs requires an m-by-m coefficient matrix")

    @property
    def d(self) -> int:
        return self.n - self.m


@dataclass(frozen=True)
class TifrResult:
    capacity_per_hz: float
    cutoff_gamma0: float
    outage_at_cutoff: float
    solver_residual: float

    def __post_init__(self) -> None:
        if self.capacity_per_hz < 0:
            raise DomainError("capacity_per_hz must be non-negative")
        if not 0.0 <= self.outage_at_cutoff <= 1.0:
            raise DomainError("outage_at_cutoff must lie in [0, 1]")


def load_mimo_coeffs(source) -> MimoCoeffs:
    """Build :class:`MimoCoeffs` from a JSON file path, JSON text, or an
    already-parsed mapping.  Raises :class:`DomainError` with an explicit
    message on any schema violation."""
    if isinstance(source, dict):
        doc = source
    else:
        text = str(source)
        if "{" not in text:
            with open(text, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        else:
            doc = json.loads(text)
    if not isinstance(doc, dict):
        raise DomainError("MimoCoeffs document must be a JSON object")
    required = {"m": int, "n": int, "t": int, "omega": list, "c": list, "k_norm": (int, float)}
    for key, typ in required.items():
        if key not in doc:
            raise DomainError(f"MimoCoeffs document missing required key {key!r}")
        if not isinstance(doc[key], typ) or isinstance(doc[key], bool):
            raise DomainError(f"MimoCoeffs key {key!r} has wrong type")
    unknown = set(doc) - set(required)
    if unknown:
        raise DomainError(f"MimoCoeffs document has unknown keys {sorted(unknown)}")
    try:
        omega = tuple(float(w) for w in doc["omega"])
        c = tuple(tuple(float(v) for v in row) for row in doc["c"])
    except (TypeError, ValueError) as exc:
        raise DomainError(f"MimoCoeffs numeric conversion failed: {exc}") from exc
    return MimoCoeffs(
        m=doc["m"], n=doc["n"], t=doc["t"], omega=omega, c=c, k_norm=float(doc["k_norm"])
    )


# ---------------------------------------------------------------------------
# shared cutoff root solver
# ---------------------------------------------------------------------------


def _solve_cutoff(g, hi: float) -> float:
    """Root of g on (0, hi]: scan a geometric grid for a sign change,
    then polish with Brent's method."""
    lo = min(1e-9, hi * 1e-9)
    grid = [lo]
    steps = 200
    for i in range(1, steps + 1):
        grid.append(lo * (hi / lo) ** (i / steps))
    prev_x, prev_f = grid[0], g(grid[0])
    for x in grid[1:]:
        f = g(x)
        if prev_f == 0.0:
            return prev_x
        if prev_f * f < 0.0:
            return float(_opt.brentq(g, prev_x, x, xtol=1e-15, rtol=8.9e-16, maxiter=200))
        prev_x, prev_f = x, f
    raise ConvergenceError(
        f"cutoff solver found no sign change on ({lo:g}, {hi:g}]; "
        f"g({lo:g})={g(lo):g}, g({hi:g})={g(hi):g}"
    )


# ---------------------------------------------------------------------------
# SISO Rician
# ---------------------------------------------------------------------------


def _siso_inv_moment(ch: RicianChannel, gamma0: float) -> float:
    """integral_{gamma0}^inf p(gamma)/gamma dgamma for the Rician SNR
    density, through the Nuttall function of order (-1, 0)."""
    c = 1.0 + ch.n_rice * ch.n_rice
    b = math.sqrt(2.0 * gamma0 * c / ch.gamma_bar)
    q = nuttall_eval(
        NuttallQuery(m=-1.0, n=0.0, a=ch.n_rice * math.sqrt(2.0), b=b), "series"
    ).value
    return 2.0 * c * q / ch.gamma_bar


def _siso_outage(ch: RicianChannel, gamma_th: float) -> float:
    if gamma_th == 0.0:
        return 0.0
    big_b = math.sqrt((1.0 + ch.n_rice**2) * gamma_th / ch.gamma_bar)
    if ch.n_rice == 0.0:
        return toronto_marcum_special(1.0, 0.0, big_b)
    return toronto_eval(TorontoQuery(m=1.0, n=0.0, r=ch.n_rice, B=big_b), "series").value


def tifr_capacity_rician(
    ch: RicianChannel, gamma0: float, gamma_th: float
) -> TifrResult:
    """Spectral efficiency C/B (bits/s/Hz) of the TIFR policy at cutoff
    ``gamma0`` and outage threshold ``gamma_th``."""
    if gamma0 <= 0:
        raise DomainError("tifr_capacity_rician requires gamma0 > 0")
    if gamma_th < 0:
        raise DomainError("tifr_capacity_rician requires gamma_th >= 0")
    inv_moment = _siso_inv_moment(ch, gamma0)
    outage = _siso_outage(ch, gamma_th)
    cap = math.log2(1.0 + 1.0 / inv_moment) * (1.0 - outage)
    return TifrResult(
        capacity_per_hz=cap,
        cutoff_gamma0=gamma0,
        outage_at_cutoff=outage,
        solver_residual=0.0,
    )


def optimal_cutoff_rician(ch: RicianChannel) -> TifrResult:
    """Optimal cutoff SNR: the fixed point of

    gamma0 = gbar Q_1(n sqrt2, b) / (gbar + 2 (1+n^2) Q_{-1,0}(n sqrt2, b)),
    b = sqrt(2 gamma0 (1+n^2) / gbar),

    equivalently the defining condition
    (1 - P_out(g0))/g0 - integral p/gamma = 1."""
    c = 1.0 + ch.n_rice * ch.n_rice

    def rhs(g0: float) -> float:
        b = math.sqrt(2.0 * g0 * c / ch.gamma_bar)
        q_marcum = marcum_q(1.0, ch.n_rice * math.sqrt(2.0), b)
        q_nut = nuttall_eval(
            NuttallQuery(m=-1.0, n=0.0, a=ch.n_rice * math.sqrt(2.0), b=b), "series"
        ).value
        return ch.gamma_bar * q_marcum / (ch.gamma_bar + 2.0 * c * q_nut)

    g0 = _solve_cutoff(lambda x: x - rhs(x), ch.gamma_bar)
    residual = abs(g0 - rhs(g0))
    cap = tifr_capacity_rician(ch, g0, g0).capacity_per_hz
    return TifrResult(
        capacity_per_hz=cap,
        cutoff_gamma0=g0,
        outage_at_cutoff=_siso_outage(ch, g0),
        solver_residual=residual,
    )


# ---------------------------------------------------------------------------
# MISO / SIMO em-tifr
# ---------------------------------------------------------------------------


def _miso_outage(ch: MisoSimoChannel, gamma: float) -> float:
    if gamma == 0.0:
        return 0.0
    big_b = math.sqrt(ch.mu_k * gamma)
    n = ch.n_ant
    return toronto_eval(
        TorontoQuery(m=2.0 * n - 1.0, n=n - 1.0, r=math.sqrt(ch.omega), B=big_b),
        "series",
    ).value


def _miso_inv_moment(ch: MisoSimoChannel, gamma0: float) -> float:
    """integral_{gamma0}^inf p(gamma)/gamma dgamma via Q_{n-2, n-1}."""
    n = ch.n_ant
    q = nuttall_eval(
        NuttallQuery(
            m=n - 2.0,
            n=n - 1.0,
            a=math.sqrt(2.0 * ch.omega),
            b=math.sqrt(2.0 * ch.mu_k * gamma0),
        ),
        "series",
    ).value
    return ch.mu_k * 2.0 ** ((3.0 - n) / 2.0) * q / ch.omega ** ((n - 1.0) / 2.0)


def em_tifr_miso_simo(
    ch: MisoSimoChannel, gamma0: float, gamma_th: float
) -> TifrResult:
    """Eigen-mode TIFR spectral efficiency (bits/s/Hz) for MISO/SIMO
    Rician channels at cutoff ``gamma0`` and outage threshold
    ``gamma_th``."""
    if gamma0 <= 0:
        raise DomainError("em_tifr_miso_simo requires gamma0 > 0")
    if gamma_th < 0:
        raise DomainError("em_tifr_miso_simo requires gamma_th >= 0")
    inv_moment = _miso_inv_moment(ch, gamma0)
    outage = _miso_outage(ch, gamma_th)
    cap = math.log2(1.0 + 1.0 / inv_moment) * (1.0 - outage)
    return TifrResult(
        capacity_per_hz=cap,
        cutoff_gamma0=gamma0,
        outage_at_cutoff=outage,
        solver_residual=0.0,
    )


def optimal_cutoff_miso(ch: MisoSimoChannel) -> dict:
    """Optimal cutoff for the MISO/SIMO eigen-mode TIFR policy.

    Solves the defining condition

    gamma0 = Q_n(sqrt(2 omega), sqrt(2 mu gamma0))
             - 2^{(3-n)/2} mu gamma0 Q_{n-2,n-1}(...) / omega^{(n-1)/2}

    by root bracketing (authoritative).  The alternative closed form
    through the inverse Nuttall function needs the target value
    -A^{n-1}/mu which is negative for all admissible parameters, so it
    is also evaluated and reported with an applicability flag.

    Returns ``{"result": TifrResult, "closed_form_gamma0": float | None,
    "closed_form_applicable": bool}``.
    """
    n = ch.n_ant
    a_nut = math.sqrt(2.0 * ch.omega)

    def rhs(g0: float) -> float:
        b = math.sqrt(2.0 * ch.mu_k * g0)
        q_marcum = marcum_q(float(n), a_nut, b)
        return q_marcum - g0 * _miso_inv_moment(ch, g0)

    g0 = _solve_cutoff(lambda x: x - rhs(x), ch.gamma_bar)
    residual = abs(g0 - rhs(g0))
    cap = em_tifr_miso_simo(ch, g0, g0).capacity_per_hz
    result = TifrResult(
        capacity_per_hz=cap,
        cutoff_gamma0=g0,
        outage_at_cutoff=_miso_outage(ch, g0),
        solver_residual=residual,
    )

    target = -(a_nut ** (n - 1.0)) / ch.mu_k
    closed_form = None
    applicable = target > 0.0
    if applicable:  # pragma: no cover - unreachable for positive parameters
        try:
            b_star = inverse_nuttall_b(n - 2.0, n - 1.0, a_nut, target)
            closed_form = b_star * b_star / (2.0 * ch.mu_k)
        except (DomainError, ConvergenceError):
            applicable = False
    return {
        "result": result,
        "closed_form_gamma0": closed_form,
        "closed_form_applicable": applicable,
    }


# ---------------------------------------------------------------------------
# MIMO em-ti
# ---------------------------------------------------------------------------


def mimo_snr_pdf(coeffs: MimoCoeffs, gamma_bar: float, gamma: float, k_factor: float = 0.0) -> float:
    """Density of a single unordered eigen-mode SNR implied by the
    supplied coefficients: a mixture of gamma-law terms (central
    columns j <= m-t) and Bessel terms (non-central columns)."""
    if gamma <= 0:
        return 0.0
    mu = (k_factor + 1.0) / gamma_bar
    m, t, d = coeffs.m, coeffs.t, coeffs.d
    total = 0.0
    x = mu * gamma
    for i in range(1, m + 1):
        for j in range(1, m - t + 1):
            s = d + i + j - 1
            total += coeffs.c[i - 1][j - 1] * mu * x ** (s - 1.0) * math.exp(-x)
        for j in range(m - t + 1, m + 1):
            w = coeffs.omega[j - (m - t) - 1]
            z = 2.0 * math.sqrt(w * x)
            total += (
                coeffs.c[i - 1][j - 1]
                * mu
                * x ** (i - 1.0)
                * (x / w) ** (d / 2.0)
                * math.exp(z - x)
                * float(_sp.ive(d, z))
            )
    return coeffs.k_norm / m * total


def _mimo_sums(coeffs: MimoCoeffs, mu: float, gamma0: float) -> tuple:
    """(survival, inv_moment): integral_{gamma0}^inf p dgamma and
    integral_{gamma0}^inf p/gamma dgamma."""
    m, t, d = coeffs.m, coeffs.t, coeffs.d
    x0 = mu * gamma0
    surv = 0.0
    inv = 0.0
    for i in range(1, m + 1):
        for j in range(1, m - t + 1):
            cij = coeffs.c[i - 1][j - 1]
            surv += cij * upper_inc_gamma(d + i + j - 1.0, x0)
            inv += cij * mu * upper_inc_gamma(d + i + j - 2.0, x0)
        for j in range(m - t + 1, m + 1):
            cij = coeffs.c[i - 1][j - 1]
            w = coeffs.omega[j - (m - t) - 1]
            a_nut = math.sqrt(2.0 * w)
            b_nut = math.sqrt(2.0 * x0)
            q_hi = nuttall_eval(
                NuttallQuery(m=d + 2.0 * i - 1.0, n=float(d), a=a_nut, b=b_nut), "series"
            ).value
            q_lo = nuttall_eval(
                NuttallQuery(m=d + 2.0 * i - 3.0, n=float(d), a=a_nut, b=b_nut), "series"
            ).value
            scale = math.exp(w) / (w ** (d / 2.0))
            surv += cij * scale * q_hi / 2.0 ** (d / 2.0 + i - 1.0)
            inv += cij * mu * scale * q_lo / 2.0 ** (d / 2.0 + i - 2.0)
    pref = coeffs.k_norm / m
    return pref * surv, pref * inv


def mimo_em_ti(
    coeffs: MimoCoeffs, gamma_bar: float, gamma0: float, k_factor: float = 0.0
) -> tuple:
    """(capacity_bits, outage, kappa) of the MIMO eigen-mode truncated
    inversion policy: capacity = m log2(1 + kappa) (1 - P_out) with
    kappa = 1 / (m integral_{gamma0}^inf p(gamma)/gamma dgamma)."""
    if gamma0 <= 0:
        raise DomainError("mimo_em_ti requires gamma0 > 0")
    if gamma_bar <= 0:
        raise DomainError("mimo_em_ti requires gamma_bar > 0")
    mu = (k_factor + 1.0) / gamma_bar
    surv, inv_moment = _mimo_sums(coeffs, mu, gamma0)
    outage = min(1.0, max(0.0, 1.0 - surv))
    kappa = 1.0 / (coeffs.m * inv_moment)
    cap = coeffs.m * math.log2(1.0 + kappa) * (1.0 - outage)
    return cap, outage, kappa


def optimal_cutoff_mimo(
    coeffs: MimoCoeffs, gamma_bar: float, k_factor: float = 0.0
) -> TifrResult:
    """Cutoff solving (1 - P_out(g0)) - g0 * integral p/gamma = g0."""
    mu = (k_factor + 1.0) / gamma_bar

    def g(g0: float) -> float:
        surv, inv_moment = _mimo_sums(coeffs, mu, g0)
        return surv - g0 * inv_moment - g0

    g0 = _solve_cutoff(g, gamma_bar)
    residual = abs(g(g0))
    cap, outage, _ = mimo_em_ti(coeffs, gamma_bar, g0, k_factor)
    return TifrResult(
        capacity_per_hz=cap,
        cutoff_gamma0=g0,
        outage_at_cutoff=outage,
        solver_residual=residual,
    )
