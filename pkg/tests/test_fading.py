import math

import pytest
from scipy.integrate import quad

from commspecial.fading import (
    AlphaEtaMu,
    AlphaKappaMu,
    AlphaLambdaMu,
    EtaMu,
    KappaMu,
    LambdaMu,
    OutageQuery,
    Rician,
    outage,
    outage_humbert,
    snr_pdf,
)

MODELS = [
    AlphaEtaMu(alpha=1.0, eta=0.5, mu=1.5),
    AlphaEtaMu(alpha=3.0, eta=2.0, mu=0.5),
    AlphaLambdaMu(alpha=2.0, lam=0.3, mu=1.0),
    AlphaKappaMu(alpha=3.0, kappa=1.0, mu=1.5),
    EtaMu(eta=4.0, mu=2.5),
    LambdaMu(lam=-0.7, mu=1.0),
    KappaMu(kappa=3.0, mu=2.5),
    Rician(n_rice=1.2),
]


@pytest.mark.parametrize("model", MODELS, ids=lambda m: type(m).__name__)
def test_analytic_outage_matches_oracle(model):
    for gamma_th in (0.3, 1.0, 3.0):
        q = OutageQuery(model, 2.0, gamma_th)
        assert outage(q, "analytic") == pytest.approx(
            outage(q, "oracle"), abs=1e-6)


@pytest.mark.parametrize("model", MODELS, ids=lambda m: type(m).__name__)
def test_outage_monotone_and_limits(model):
    gamma_bar = 2.0
    values = [outage(OutageQuery(model, gamma_bar, g), "analytic")
              for g in (0.1, 0.5, 1.0, 2.0, 5.0, 20.0)]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    lo = outage(OutageQuery(model, gamma_bar, 1e-12), "analytic")
    hi = outage(OutageQuery(model, gamma_bar, 50.0 * gamma_bar), "analytic")
    assert lo <= 1e-4
    assert hi >= 1.0 - 1e-4


@pytest.mark.parametrize("model", MODELS, ids=lambda m: type(m).__name__)
def test_pdf_integrates_to_outage(model):
    gamma_bar, gamma_th = 2.0, 1.5
    val, _ = quad(lambda g: snr_pdf(model, gamma_bar, g), 0.0, gamma_th,
                  epsabs=1e-12, epsrel=1e-11, limit=300)
    q = OutageQuery(model, gamma_bar, gamma_th)
    assert outage(q, "analytic") == pytest.approx(val, abs=1e-8)


def test_humbert_route_agrees():
    for model in (EtaMu(eta=0.5, mu=1.5), LambdaMu(lam=0.4, mu=1.0)):
        q = OutageQuery(model, 2.0, 1.0)
        assert outage_humbert(q) == pytest.approx(
            outage(q, "analytic"), abs=1e-7)


def test_alpha2_reduction_is_exact():
    # alpha = 2 must follow the same code path as the reduced model: bitwise
    # identical outage values, not merely close ones.
    for gamma_th in (0.4, 1.0, 2.5):
        a2 = outage(OutageQuery(AlphaEtaMu(2.0, 0.5, 1.5), 2.0, gamma_th),
                    "analytic")
        em = outage(OutageQuery(EtaMu(0.5, 1.5), 2.0, gamma_th), "analytic")
        assert a2 == em


def test_lambda_eta_duality():
    for lam in (-0.7, -0.3, 0.3, 0.7):
        eta = (1.0 - lam) / (1.0 + lam)
        p_lam = outage(OutageQuery(LambdaMu(lam, 1.5), 2.0, 1.0), "analytic")
        p_eta = outage(OutageQuery(EtaMu(eta, 1.5), 2.0, 1.0), "analytic")
        assert p_lam == pytest.approx(p_eta, abs=1e-9)


def test_outage_scales_with_mean_snr():
    model = Rician(n_rice=1.0)
    p1 = outage(OutageQuery(model, 1.0, 0.5), "analytic")
    p2 = outage(OutageQuery(model, 4.0, 2.0), "analytic")
    assert p1 == pytest.approx(p2, abs=1e-10)
    assert math.isfinite(p1)
