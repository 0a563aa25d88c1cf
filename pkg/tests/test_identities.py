from commspecial.identities import identity_suite


def test_identity_suite_residuals():
    out = identity_suite()
    reports = out["reports"]
    assert len(reports) >= 20
    worst = max(r.residual for r in reports)
    assert worst <= 1e-7
    for r in reports:
        # residuals are normalized by the magnitude of the identity's sides
        scale = max(1.0, abs(r.lhs), abs(r.rhs))
        assert r.residual * scale >= abs(r.lhs - r.rhs) * (1 - 1e-12)


def test_identity_suite_refusals_are_explicit():
    out = identity_suite()
    refusals = out["refusals"]
    assert len(refusals) >= 4
    for rec in refusals:
        assert rec["reason"]
