"""Outage probability / CDF / PDF for seven generalized fading models,
each expressed through the special-function modules.

Models: alpha-eta-mu, alpha-lambda-mu, alpha-kappa-mu and their alpha=2
reductions eta-mu, lambda-mu, kappa-mu, plus Rician.  The eta family
maps to incomplete Lipschitz-Hankel integrals; the kappa family and
Rician map to the incomplete Toronto function.  A PDF-quadrature oracle
is provided for every model.

The lambda family is handled through the exact parameter duality
eta = (1 - lambda) / (1 + lambda), so both formats share one code path.
For eta < 1 the Bessel-order/argument signs are folded into absolute
values (legitimate because I_nu(z)/z^nu is even in z), which keeps the
Lipschitz-Hankel parameter (1 + eta)/|1 - eta| above 1 on both sides of
eta = 1; the closed form is therefore fully analytic for every
eta != 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from scipy import integrate as _integrate
from scipy import special as _sp

from .errors import DomainError
from .ilhi import ilhi_eval
from .toronto import toronto_eval, toronto_marcum_special
from .types import IlhiQuery, TorontoQuery

__all__ = [
    "AlphaEtaMu",
    "AlphaLambdaMu",
    "AlphaKappaMu",
    "EtaMu",
    "LambdaMu",
    "KappaMu",
    "Rician",
    "FadingModel",
    "OutageQuery",
    "snr_pdf",
    "outage",
    "outage_humbert",
]


@dataclass(frozen=True)
class AlphaEtaMu:
    alpha: float
    eta: float
    mu: float

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.eta <= 0 or self.mu <= 0:
            raise DomainError("AlphaEtaMu requires alpha, eta, mu > 0")


@dataclass(frozen=True)
class AlphaLambdaMu:
    alpha: float
    lam: float
    mu: float

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.mu <= 0:
            raise DomainError("AlphaLambdaMu requires alpha, mu > 0")
        if not -1.0 < self.lam < 1.0 or self.lam == 0.0:
            raise DomainError("AlphaLambdaMu requires lambda in (-1, 1) \\ {0}")


@dataclass(frozen=True)
class AlphaKappaMu:
    alpha: float
    kappa: float
    mu: float

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.kappa <= 0 or self.mu <= 0:
            raise DomainError("AlphaKappaMu requires alpha, kappa, mu > 0")


@dataclass(frozen=True)
class EtaMu:
    eta: float
    mu: float

    def __post_init__(self) -> None:
        if self.eta <= 0 or self.mu <= 0:
            raise DomainError("EtaMu requires eta, mu > 0")


@dataclass(frozen=True)
class LambdaMu:
    lam: float
    mu: float

    def __post_init__(self) -> None:
        if self.mu <= 0:
            raise DomainError("LambdaMu requires mu > 0")
        if not -1.0 < self.lam < 1.0 or self.lam == 0.0:
            raise DomainError("LambdaMu requires lambda in (-1, 1) \\ {0}")


@dataclass(frozen=True)
class KappaMu:
    kappa: float
    mu: float

    def __post_init__(self) -> None:
        if self.kappa <= 0 or self.mu <= 0:
            raise DomainError("KappaMu requires kappa, mu > 0")


@dataclass(frozen=True)
class Rician:
    n_rice: float

    def __post_init__(self) -> None:
        if self.n_rice < 0:
            raise DomainError("Rician requires n_rice >= 0")


FadingModel = Union[
    AlphaEtaMu, AlphaLambdaMu, AlphaKappaMu, EtaMu, LambdaMu, KappaMu, Rician
]


@dataclass(frozen=True)
class OutageQuery:
    model: FadingModel
    gamma_bar: float
    gamma_th: float

    def __post_init__(self) -> None:
        if self.gamma_bar <= 0:
            raise DomainError("OutageQuery requires gamma_bar > 0")
        if self.gamma_th < 0:
            raise DomainError("OutageQuery requires gamma_th >= 0")


def _eta_form(model: FadingModel):
    """(alpha, eta, mu) for the eta family, mapping lambda via the
    duality eta = (1 - lambda) / (1 + lambda); None otherwise."""
    if isinstance(model, AlphaEtaMu):
        return model.alpha, model.eta, model.mu
    if isinstance(model, EtaMu):
        return 2.0, model.eta, model.mu
    if isinstance(model, AlphaLambdaMu):
        return model.alpha, (1.0 - model.lam) / (1.0 + model.lam), model.mu
    if isinstance(model, LambdaMu):
        return 2.0, (1.0 - model.lam) / (1.0 + model.lam), model.mu
    return None


def _kappa_form(model: FadingModel):
    """(alpha, kappa, mu) for the kappa family, mapping Rician to
    kappa = n^2, mu = 1; None otherwise."""
    if isinstance(model, AlphaKappaMu):
        return model.alpha, model.kappa, model.mu
    if isinstance(model, KappaMu):
        return 2.0, model.kappa, model.mu
    if isinstance(model, Rician):
        return 2.0, model.n_rice * model.n_rice, 1.0
    return None


def snr_pdf(model: FadingModel, gamma_bar: float, gamma: float) -> float:
    """Probability density of the instantaneous SNR at ``gamma``."""
    if gamma_bar <= 0:
        raise DomainError("snr_pdf requires gamma_bar > 0")
    if gamma <= 0:
        return 0.0
    ef = _eta_form(model)
    if ef is not None:
        alpha, eta, mu = ef
        if eta == 1.0:
            # Nakagami-like limit: I_{mu-1/2}(w)/w^{mu-1/2} -> 1/(2^{mu-1/2}
            # Gamma(mu+1/2)) as w -> 0; the density reduces to a gamma law
            # in gamma^{alpha/2} with shape 2*mu.
            t = (gamma / gamma_bar) ** (alpha / 2.0)
            logp = (
                2.0 * mu * math.log(2.0 * mu)
                - math.lgamma(2.0 * mu)
                + math.log(alpha / 2.0)
                + (alpha * mu - 1.0) * math.log(gamma)
                - alpha * mu * math.log(gamma_bar)
                - 2.0 * mu * t
            )
            return math.exp(logp)
        nu = mu - 0.5
        t = (gamma / gamma_bar) ** (alpha / 2.0)
        e = alpha * (mu + 0.5) / 2.0
        pre = (
            alpha
            * (1.0 + eta) ** (mu + 0.5)
            * math.sqrt(math.pi)
            * mu ** (mu + 0.5)
            / (2.0 * math.gamma(mu) * math.sqrt(eta) * abs(eta - 1.0) ** (mu - 0.5))
        )
        w = abs(eta * eta - 1.0) * mu * t / (2.0 * eta)
        expo = (
            w
            - (1.0 + eta) ** 2 * mu * t / (2.0 * eta)
            + (e - 1.0) * math.log(gamma)
            - e * math.log(gamma_bar)
        )
        return pre * math.exp(expo) * float(_sp.ive(nu, w))
    kf = _kappa_form(model)
    if kf is None:  # pragma: no cover - exhaustive union
        raise DomainError(f"unknown fading model {model!r}")
    alpha, kappa, mu = kf
    t = (gamma / gamma_bar) ** (alpha / 2.0)
    e = alpha * (1.0 + mu) / 4.0
    if kappa == 0.0:
        logp = (
            mu * math.log(mu)
            - math.lgamma(mu)
            + math.log(alpha / 2.0)
            + (alpha * mu / 2.0 - 1.0) * math.log(gamma)
            - alpha * mu / 2.0 * math.log(gamma_bar)
            - mu * t
        )
        return math.exp(logp)
    w = 2.0 * mu * math.sqrt(kappa * (1.0 + kappa) * t)
    pre = (
        alpha
        * mu
        * (1.0 + kappa) ** ((1.0 + mu) / 2.0)
        / (2.0 * kappa ** ((mu - 1.0) / 2.0))
    )
    expo = (
        w
        - mu * kappa
        - mu * (1.0 + kappa) * t
        + (e - 1.0) * math.log(gamma)
        - e * math.log(gamma_bar)
    )
    return pre * math.exp(expo) * float(_sp.ive(mu - 1.0, w))


def _outage_oracle(q: OutageQuery) -> float:
    val, _ = _integrate.quad(
        lambda g: snr_pdf(q.model, q.gamma_bar, g),
        0.0,
        q.gamma_th,
        limit=400,
        epsabs=1e-12,
        epsrel=1e-11,
    )
    return min(1.0, max(0.0, val))


def _eta_outage_analytic(alpha: float, eta: float, mu: float, q: OutageQuery) -> float:
    a = (1.0 + eta) / abs(1.0 - eta)
    u = (
        mu
        * abs(eta * eta - 1.0)
        * q.gamma_th ** (alpha / 2.0)
        / (2.0 * eta * q.gamma_bar ** (alpha / 2.0))
    )
    pre = (
        math.sqrt(math.pi)
        * 2.0 ** (mu + 0.5)
        * eta**mu
        / (math.gamma(mu) * abs(eta - 1.0) ** (2.0 * mu))
    )
    return pre * ilhi_eval(IlhiQuery(m=mu - 0.5, n=mu - 0.5, a=a, x=u), "series").value


def _kappa_outage_analytic(alpha: float, kappa: float, mu: float, q: OutageQuery) -> float:
    big_b = math.sqrt(mu * (1.0 + kappa)) * (q.gamma_th / q.gamma_bar) ** (alpha / 4.0)
    r = math.sqrt(kappa * mu)
    if r == 0.0:
        return toronto_marcum_special(2.0 * mu - 1.0, r, big_b)
    return toronto_eval(TorontoQuery(m=2.0 * mu - 1.0, n=mu - 1.0, r=r, B=big_b), "series").value


def outage(q: OutageQuery, route: str = "analytic") -> float:
    """Outage probability P(SNR <= gamma_th); equivalently the SNR CDF.

    ``route="analytic"`` composes the closed forms (Lipschitz-Hankel for
    the eta family, incomplete Toronto for the kappa family and Rician);
    ``route="oracle"`` integrates :func:`snr_pdf` on [0, gamma_th].
    eta = 1 divides the eta-family closed form by zero, so that single
    point delegates to the oracle.
    """
    if q.gamma_th == 0.0:
        return 0.0
    if route == "oracle":
        return _outage_oracle(q)
    if route != "analytic":
        raise DomainError(f"unknown outage route {route!r}")
    ef = _eta_form(q.model)
    if ef is not None:
        alpha, eta, mu = ef
        if eta == 1.0:
            return _outage_oracle(q)
        return min(1.0, max(0.0, _eta_outage_analytic(alpha, eta, mu, q)))
    kf = _kappa_form(q.model)
    if kf is None:  # pragma: no cover - exhaustive union
        raise DomainError(f"unknown fading model {q.model!r}")
    alpha, kappa, mu = kf
    return min(1.0, max(0.0, _kappa_outage_analytic(alpha, kappa, mu, q)))


def outage_humbert(q: OutageQuery) -> float:
    """Alternative eta-mu / lambda-mu outage through the Gauss-2F1 /
    Humbert-Phi1 closed form, valid for 2*mu a positive integer."""
    if not isinstance(q.model, (EtaMu, LambdaMu)):
        raise DomainError("outage_humbert requires an EtaMu or LambdaMu model")
    _, eta, mu = _eta_form(q.model)
    two_mu = 2.0 * mu
    if abs(two_mu - round(two_mu)) > 1e-12 or round(two_mu) < 1:
        raise DomainError("outage_humbert requires 2*mu a positive integer")
    if eta == 1.0:
        raise DomainError("outage_humbert is singular at eta = 1")
    if q.gamma_th == 0.0:
        return 0.0
    a = (1.0 + eta) / abs(1.0 - eta)
    u = mu * abs(eta * eta - 1.0) * q.gamma_th / (2.0 * eta * q.gamma_bar)
    pre = (
        math.sqrt(math.pi)
        * 2.0 ** (mu + 0.5)
        * eta**mu
        / (math.gamma(mu) * abs(eta - 1.0) ** (2.0 * mu))
    )
    val = pre * ilhi_eval(IlhiQuery(m=mu - 0.5, n=mu - 0.5, a=a, x=u), "mn_integer").value
    return min(1.0, max(0.0, val))
