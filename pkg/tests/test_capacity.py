import json
import math

import pytest
from scipy.integrate import quad

from commspecial.capacity import (
    MimoCoeffs,
    MisoSimoChannel,
    RicianChannel,
    em_tifr_miso_simo,
    load_mimo_coeffs,
    mimo_em_ti,
    mimo_snr_pdf,
    optimal_cutoff_mimo,
    optimal_cutoff_miso,
    optimal_cutoff_rician,
    tifr_capacity_rician,
)
from commspecial.fading import Rician, snr_pdf


def _capacity_by_quadrature(pdf, gamma0, gamma_th):
    # TIFR: C/B = log2(1 + gamma0 * S) * P[gamma >= gamma_th], where S is the
    # inversion gain E[1/gamma ; gamma >= gamma0]^{-1}.
    inv_mean, _ = quad(lambda g: pdf(g) / g, gamma0, math.inf,
                       epsabs=1e-13, epsrel=1e-12, limit=400)
    tail, _ = quad(pdf, gamma_th, math.inf,
                   epsabs=1e-13, epsrel=1e-12, limit=400)
    return math.log2(1.0 + 1.0 / inv_mean) * tail


@pytest.mark.parametrize("n_rice", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("gamma_bar", [1.0, 5.0])
def test_siso_capacity_matches_quadrature(n_rice, gamma_bar):
    ch = RicianChannel(n_rice=n_rice, gamma_bar=gamma_bar)
    gamma0 = 0.6
    res = tifr_capacity_rician(ch, gamma0, gamma0)
    pdf = lambda g: snr_pdf(Rician(n_rice), gamma_bar, g)
    expect = _capacity_by_quadrature(pdf, gamma0, gamma0)
    assert res.capacity_per_hz == pytest.approx(expect, rel=1e-6)


@pytest.mark.parametrize("n_rice", [0.5, 1.0, 2.0])
def test_siso_optimal_cutoff(n_rice):
    ch = RicianChannel(n_rice=n_rice, gamma_bar=5.0)
    res = optimal_cutoff_rician(ch)
    assert abs(res.solver_residual) <= 1e-8
    assert 0.0 < res.cutoff_gamma0 < 1.0
    redo = tifr_capacity_rician(ch, res.cutoff_gamma0, res.cutoff_gamma0)
    assert redo.capacity_per_hz == pytest.approx(res.capacity_per_hz,
                                                 rel=1e-10)
    assert 0.0 <= res.outage_at_cutoff <= 1.0


def test_miso_simo_optimal_cutoff():
    ch = MisoSimoChannel(K=1.5, los_power=2.0, n_ant=2, gamma_bar=5.0)
    sol = optimal_cutoff_miso(ch)
    res = sol["result"]
    assert abs(res.solver_residual) <= 1e-8
    redo = em_tifr_miso_simo(ch, res.cutoff_gamma0, res.cutoff_gamma0)
    assert redo.capacity_per_hz == pytest.approx(res.capacity_per_hz, rel=1e-10)


def _unit_mimo_coeffs(k):
    return MimoCoeffs(m=1, n=1, t=1, omega=(k,), c=((math.exp(-k),),),
                      k_norm=1.0)


def test_mimo_capacity_matches_quadrature():
    k = 1.3
    coeffs = _unit_mimo_coeffs(k)
    gamma_bar, gamma0 = 5.0, 0.7
    cap, pout, kappa = mimo_em_ti(coeffs, gamma_bar, gamma0, k_factor=k)
    pdf = lambda g: mimo_snr_pdf(coeffs, gamma_bar, g, k_factor=k)
    expect = _capacity_by_quadrature(pdf, gamma0, gamma0)
    assert cap == pytest.approx(expect, rel=1e-6)
    assert 0.0 <= pout <= 1.0
    assert kappa > 0.0


def test_mimo_optimal_cutoff():
    coeffs = _unit_mimo_coeffs(1.3)
    res = optimal_cutoff_mimo(coeffs, 5.0, k_factor=1.3)
    assert abs(res.solver_residual) <= 1e-8
    cap, _, _ = mimo_em_ti(coeffs, 5.0, res.cutoff_gamma0, k_factor=1.3)
    assert cap == pytest.approx(res.capacity_per_hz, rel=1e-10)


def test_mimo_1x1_reduces_to_rician():
    # A 1x1 channel with LOS factor k is Rician with n_rice = sqrt(k).
    k = 1.44
    coeffs = _unit_mimo_coeffs(k)
    pdf_mimo = lambda g: mimo_snr_pdf(coeffs, 5.0, g, k_factor=k)
    pdf_rice = lambda g: snr_pdf(Rician(math.sqrt(k)), 5.0, g)
    for g in (0.2, 1.0, 3.0, 8.0):
        assert pdf_mimo(g) == pytest.approx(pdf_rice(g), rel=1e-9)


def test_load_mimo_coeffs_accepts_dict_text_and_path(tmp_path):
    data = {"m": 1, "n": 1, "t": 1, "omega": [1.3],
            "c": [[math.exp(-1.3)]], "k_norm": 1.0}
    from_dict = load_mimo_coeffs(data)
    from_text = load_mimo_coeffs(json.dumps(data))
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps(data))
    from_path = load_mimo_coeffs(str(path))
    assert from_dict == from_text == from_path
    assert from_dict.d == 0
