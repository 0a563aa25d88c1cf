import math

import pytest

from commspecial import kernels
from commspecial.errors import DomainError


def test_gamma_matches_factorial():
    assert kernels.gamma(5.0) == pytest.approx(24.0, rel=1e-14)


def test_incomplete_gammas_sum_to_complete():
    for a in (0.3, 1.0, 2.7):
        for x in (0.1, 1.0, 5.0):
            total = kernels.upper_inc_gamma(a, x) + kernels.lower_inc_gamma(a, x)
            assert total == pytest.approx(kernels.gamma(a), rel=1e-12)


def test_lower_inc_gamma_large_shape_log_space_fallback():
    # gamma(200) overflows a float, but gamma(200, 30) is representable;
    # the log-space recombination must recover it.
    import mpmath
    v = kernels.lower_inc_gamma(200.0, 30.0)
    assert math.isfinite(v)
    assert v == pytest.approx(float(mpmath.gammainc(200, 0, 30)), rel=1e-10)


def test_pochhammer():
    assert kernels.pochhammer(3.0, 4) == pytest.approx(3 * 4 * 5 * 6)
    assert kernels.pochhammer(0.5, 0) == 1.0


def test_gaussian_q_symmetry():
    assert kernels.gaussian_q(0.0) == pytest.approx(0.5)
    assert kernels.gaussian_q(1.0) + kernels.gaussian_q(-1.0) == pytest.approx(1.0)


def test_bessel_i_small_order_values():
    assert kernels.bessel_i(0.0, 0.0) == pytest.approx(1.0)
    # I_{1/2}(x) = sqrt(2/(pi x)) sinh(x)
    x = 1.3
    expect = math.sqrt(2.0 / (math.pi * x)) * math.sinh(x)
    assert kernels.bessel_i(0.5, x) == pytest.approx(expect, rel=1e-12)


def test_marcum_q_p_complement():
    for m in (1.0, 2.5):
        for a in (0.5, 1.5):
            for b in (0.3, 2.0):
                q = kernels.marcum_q(m, a, b)
                p = kernels.marcum_p(m, a, b)
                assert q + p == pytest.approx(1.0, abs=1e-12)


def test_marcum_q_zero_noncentrality_is_gamma_ratio():
    m, b = 2.0, 1.5
    expect = kernels.upper_inc_gamma(m, 0.5 * b * b) / kernels.gamma(m)
    assert kernels.marcum_q(m, 0.0, b) == pytest.approx(expect, rel=1e-12)


def test_half_grid_helpers():
    assert kernels.half_ceil(0.2) == 0.5
    assert kernels.half_ceil(0.5) == 0.5
    assert kernels.half_ceil(0.7) == 1.5
    assert kernels.half_floor(0.7) == 0.5
    assert kernels.half_floor(-0.2) == -0.5


def test_gamma_rejects_nonpositive_integers():
    with pytest.raises(DomainError):
        kernels.gamma(0.0)
    with pytest.raises(DomainError):
        kernels.gamma(-3.0)
