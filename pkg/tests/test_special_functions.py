import pytest

from commspecial.errors import CommSpecialError, DomainError
from commspecial.ilhi import ilhi_bounds, ilhi_eval, ilhi_trunc_bound
from commspecial.kernels import marcum_q
from commspecial.nuttall import (
    normalized_nuttall,
    nuttall_eval,
    nuttall_trunc_bound,
    nuttall_upper,
)
from commspecial.quadrature import oracle
from commspecial.rice_ie import rice_ie_bounds, rice_ie_eval, rice_ie_trunc_bound
from commspecial.toronto import toronto_bounds, toronto_eval, toronto_trunc_bound
from commspecial.types import IlhiQuery, NuttallQuery, RiceIeQuery, TorontoQuery

NUTTALL_POINTS = [
    NuttallQuery(0.7, 0.3, 0.6, 0.4),
    NuttallQuery(1.6, 1.4, 0.6, 1.3),
    NuttallQuery(1.2, 1.8, 2.0, 2.0),
]
TORONTO_POINTS = [
    TorontoQuery(2.0, 0.5, 2.0, 3.0),
    TorontoQuery(3.0, 1.5, 2.0, 5.0),
    TorontoQuery(1.1, 1.9, 1.2, 3.0),
]
RICE_IE_POINTS = [
    RiceIeQuery(0.1, 0.4),
    RiceIeQuery(0.6, 0.8),
    RiceIeQuery(0.9, 4.8),
]
ILHI_POINTS = [
    IlhiQuery(0.5, 0.5, 1.7, 3.2),
    IlhiQuery(-0.5, 0.5, 2.7, 3.2),
    IlhiQuery(1.1, 0.8, 1.4, 1.7),
]


@pytest.mark.parametrize("q", NUTTALL_POINTS)
@pytest.mark.parametrize("method", ["series", "kdf"])
def test_nuttall_routes_match_oracle(q, method):
    ref = oracle("nuttall", q)
    assert nuttall_eval(q, method, None).value == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("q", TORONTO_POINTS)
@pytest.mark.parametrize("method", ["series", "kdf", "via_nuttall"])
def test_toronto_routes_match_oracle(q, method):
    ref = oracle("toronto", q)
    assert toronto_eval(q, method, None).value == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("q", RICE_IE_POINTS)
@pytest.mark.parametrize("method", ["series", "humbert"])
def test_rice_ie_routes_match_oracle(q, method):
    ref = oracle("rice_ie", q)
    assert rice_ie_eval(q, method, None).value == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("q", ILHI_POINTS)
def test_ilhi_series_matches_oracle(q):
    ref = oracle("ilhi", q)
    assert ilhi_eval(q, "series", None).value == pytest.approx(ref, abs=1e-9)


def test_rice_ie_zero_k_is_exponential_cdf():
    # Ie(0, x) = 1 - exp(-x)
    assert rice_ie_eval(RiceIeQuery(0.0, 1.0), "series", None).value == \
        pytest.approx(0.6321205588285577, abs=1e-12)


def test_normalized_nuttall_reduces_to_marcum():
    for a, b in [(0.6, 0.4), (1.5, 0.9)]:
        q1 = normalized_nuttall(NuttallQuery(1.0, 0.0, a, b)).value
        assert q1 == pytest.approx(marcum_q(1.0, a, b), abs=1e-10)
        for m in (2.0, 3.0):
            qm = normalized_nuttall(NuttallQuery(m, m - 1.0, a, b)).value
            assert qm == pytest.approx(marcum_q(m, a, b), abs=1e-10)


@pytest.mark.parametrize("q", TORONTO_POINTS)
def test_toronto_bounds_bracket(q):
    ref = oracle("toronto", q)
    iv = toronto_bounds(q)
    assert iv.lower <= ref + 1e-12
    assert ref <= iv.upper + 1e-12


@pytest.mark.parametrize("q", RICE_IE_POINTS)
def test_rice_ie_bounds_bracket(q):
    ref = oracle("rice_ie", q)
    iv = rice_ie_bounds(q)
    assert iv.lower <= ref + 1e-12
    assert ref <= iv.upper + 1e-12


@pytest.mark.parametrize("q", ILHI_POINTS)
def test_ilhi_bounds_bracket(q):
    ref = oracle("ilhi", q)
    iv = ilhi_bounds(q)
    assert iv.lower <= ref + 1e-12
    assert ref <= iv.upper + 1e-12


@pytest.mark.parametrize("q", NUTTALL_POINTS)
def test_nuttall_upper_bound(q):
    assert oracle("nuttall", q) <= nuttall_upper(q) + 1e-12


@pytest.mark.parametrize("p", [5, 10, 20])
def test_trunc_bounds_dominate_poly_error(p):
    cases = [
        ("nuttall", NuttallQuery(1.6, 1.4, 0.6, 0.4),
         lambda q: nuttall_eval(q, "poly", p).value, nuttall_trunc_bound),
        ("toronto", TorontoQuery(3.0, 1.5, 2.0, 5.0),
         lambda q: toronto_eval(q, "poly", p).value, toronto_trunc_bound),
        ("rice_ie", RiceIeQuery(0.6, 0.8),
         lambda q: rice_ie_eval(q, "poly", p).value, rice_ie_trunc_bound),
        ("ilhi", IlhiQuery(0.5, 0.5, 1.7, 3.2),
         lambda q: ilhi_eval(q, "poly", p).value, ilhi_trunc_bound),
    ]
    for fid, q, run, bound in cases:
        gap = abs(oracle(fid, q) - run(q))
        assert bound(q, p) + 1e-12 >= gap, (fid, p)


def test_domain_refusals():
    with pytest.raises(DomainError):
        toronto_eval(TorontoQuery(0.5, 2.0, -1.0, 3.0), "series", None)
    with pytest.raises(CommSpecialError):
        ilhi_eval(IlhiQuery(-1.0, -1.0, 1.4, 1.7), "series", None)
    with pytest.raises(CommSpecialError):
        ilhi_eval(IlhiQuery(0.5, 0.5, 0.5, 1.7), "poly", 20)
    with pytest.raises(CommSpecialError):
        nuttall_eval(NuttallQuery(0.7, 0.3, 0.6, 0.4), "no-such-method", None)
