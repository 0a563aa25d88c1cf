"""Cross-validation identities tying the two-variable hypergeometric
functions to the implemented special functions.

Four identities are checked:

* ``cor1``: the Kampe de Feriet function F^{1,0}_{1,1}(a; a+1 : b; x, -y)
  expressed through the incomplete Toronto function.
* ``cor2``: the same function expressed through a confluent
  hypergeometric head minus a Nuttall Q-function term.
* ``cor3``: the Humbert function Phi_1(a, 1, 2a; x, y) expressed through
  a Gauss 2F1 head minus an incomplete Lipschitz-Hankel integral.
* ``cor4``: Phi_1(1/2, 1, 1; x, y) expressed through first-order Marcum
  Q-functions.

Each check evaluates both sides independently and returns an
:class:`~commspecial.types.IdentityReport`.  Inadmissible points
(singular prefactors, negative radicands) raise
:class:`~commspecial.errors.DomainError` so callers can record explicit
refusals instead of silently skipping them.
"""

from __future__ import annotations

import math

from .errors import DomainError, LossOfSignificanceError
from .hyper import KdfArgs, Phi1Args, gauss_2f1, humbert_phi1, kdf_f1110, kummer_1f1
from .ilhi import ilhi_eval
from .kernels import gamma, marcum_p, marcum_q
from .nuttall import nuttall_eval
from .toronto import toronto_eval
from .types import IdentityReport, IlhiQuery, NuttallQuery, TorontoQuery

__all__ = [
    "check_kdf_identities",
    "check_humbert_identities",
    "identity_suite",
]


def _check_kdf_point(a: float, b: float, x: float, y: float) -> None:
    if x <= 0.0 or y <= 0.0:
        raise DomainError(
            "kdf identities require x > 0 and y > 0 (prefactor x^(b-a) y^(2a-b) "
            "is singular at x = 0 or y = 0)"
        )
    if a <= 0.0:
        raise DomainError(
            "kdf identities require a > 0 (the Toronto-side integral diverges "
            "for a <= 0)"
        )
    if b <= 0.0:
        raise DomainError("kdf identities require b > 0")


def check_kdf_identities(point: tuple) -> list:
    """Check both Kampe de Feriet identities at ``point = (a, b, x, y)``.

    Left-hand side: the double series F^{1,0}_{1,1}(a; a+1 : b; x, -y).
    Right-hand sides:

    * ``cor1``: a Gamma(b) e^{x/y} T_{sqrt(y)}(2a-1, b-1, sqrt(x/y))
      / (x^{b-a} y^{2a-b});
    * ``cor2``: a Gamma(a) 1F1(b-a; b; -x/y) e^{x/y} / y^a
      - a Gamma(b) Q_{2a-b, b-1}(sqrt(2x/y), sqrt(2y)) e^{x/y}
      / (y^{a-(b-1)/2} x^{(b-1)/2} 2^{a-(b+1)/2}).

    Returns a two-element list of :class:`IdentityReport`.
    """
    a, b, x, y = (float(v) for v in point)
    _check_kdf_point(a, b, x, y)
    lhs = kdf_f1110(KdfArgs(a=a, c=a + 1.0, b=b, x=x, y=-y))

    tq = TorontoQuery(m=2.0 * a - 1.0, n=b - 1.0, r=math.sqrt(x / y), B=math.sqrt(y))
    t_val = toronto_eval(tq, "series").value
    rhs1 = a * gamma(b) * math.exp(x / y) * t_val / (x ** (b - a) * y ** (2.0 * a - b))

    head = a * gamma(a) * kummer_1f1(b - a, b, -x / y) * math.exp(x / y) / y ** a
    nq = NuttallQuery(
        m=2.0 * a - b, n=b - 1.0, a=math.sqrt(2.0 * x / y), b=math.sqrt(2.0 * y)
    )
    q_val = nuttall_eval(nq, "series").value
    tail = (
        a
        * gamma(b)
        * q_val
        * math.exp(x / y)
        / (y ** (a - (b - 1.0) / 2.0) * x ** ((b - 1.0) / 2.0) * 2.0 ** (a - (b + 1.0) / 2.0))
    )
    rhs2 = head - tail

    return [
        IdentityReport(identity_id="cor1", point=(a, b, x, y), lhs=lhs, rhs=rhs1),
        IdentityReport(identity_id="cor2", point=(a, b, x, y), lhs=lhs, rhs=rhs2),
    ]


def _check_humbert_point(a: float, x: float, y: float) -> None:
    if not 0.0 < x < 1.0:
        raise DomainError(
            "humbert identities require 0 < x < 1 (the Lipschitz-Hankel "
            "parameter 2/x - 1 must exceed 1; for x < 0 the radicand of c in "
            "the Marcum form is negative)"
        )
    if y <= 0.0:
        raise DomainError("humbert identities require y > 0")
    if a <= 0.0:
        raise DomainError("humbert identities require a > 0")


def check_humbert_identities(point: tuple) -> list:
    """Check both Humbert Phi_1 identities at ``point = (a, x, y)``.

    * ``cor3``: Phi_1(a, 1, 2a; x, y) = e^{y/x} [2F1(a, 1; 2a; x)
      - 2^{a+1/2} Gamma(a+1/2) Ie_{1/2-a, a-1/2}(y/2; 2/x - 1) / x];
    * ``cor4``: Phi_1(1/2, 1, 1; x, y) = e^{y/x}
      [(1 - Q_1(b, c)) + Q_1(c, b)] / sqrt(1 - x), with
      b = sqrt(y (1 + sqrt(1-x)) / x - y/2) and
      c = sqrt(y (1 - sqrt(1-x)) / x - y/2).  The cancellation-free
      grouping uses 2F1(1/2, 1; 1; x) = 1/sqrt(1-x) exactly.

    ``cor4`` does not involve ``a``; it is checked at the same (x, y).
    Returns a two-element list of :class:`IdentityReport`.
    """
    a, x, y = (float(v) for v in point)
    _check_humbert_point(a, x, y)

    lhs3 = humbert_phi1(Phi1Args(a, 1.0, 2.0 * a, x, y))
    iq = IlhiQuery(m=0.5 - a, n=a - 0.5, a=2.0 / x - 1.0, x=y / 2.0)
    ie = ilhi_eval(iq, "series").value
    rhs3 = math.exp(y / x) * (
        gauss_2f1(a, 1.0, 2.0 * a, x)
        - 2.0 ** (a + 0.5) * gamma(a + 0.5) / x * ie
    )

    lhs4 = humbert_phi1(Phi1Args(0.5, 1.0, 1.0, x, y))
    s = math.sqrt(1.0 - x)
    rad_b = y / x * (1.0 + s) - y / 2.0
    rad_c = y / x * (1.0 - s) - y / 2.0
    if rad_b < 0.0 or rad_c < 0.0:
        raise DomainError("negative radicand in the Marcum arguments of cor4")
    bb = math.sqrt(rad_b)
    cc = math.sqrt(rad_c)
    rhs4 = math.exp(y / x) * (marcum_p(1.0, bb, cc) + marcum_q(1.0, cc, bb)) / s

    return [
        IdentityReport(identity_id="cor3", point=(a, x, y), lhs=lhs3, rhs=rhs3),
        IdentityReport(identity_id="cor4", point=(0.5, x, y), lhs=lhs4, rhs=rhs4),
    ]


_KDF_GRID = [
    (1.5, 1.5, 36.0, 9.0),
    (1.0, 1.0, 0.25, 0.25),
    (2.0, 1.5, 4.0, 2.0),
    (0.7, 1.2, 1.0, 3.0),
    (1.2, 2.3, 0.5, 1.5),
    (2.5, 2.0, 9.0, 4.0),
]

_KDF_REFUSALS = [
    (1.0, 1.0, 0.0, 1.0),
    (-0.2, 1.0, 1.0, 1.0),
]

_HUMBERT_GRID = [
    (1.0, 0.5, 1.0),
    (1.5, 0.3, 2.0),
    (0.8, 0.7, 0.5),
    (2.5, 0.9, 1.2),
    (1.2, 0.2, 0.8),
    (0.6, 0.6, 3.0),
]

_HUMBERT_REFUSALS = [
    (1.0, -0.5, 1.0),
    (1.0, 0.5, -1.0),
]


def identity_suite() -> dict:
    """Run every identity over its built-in admissible grid plus the
    documented refusal points.

    Returns ``{"reports": [IdentityReport...], "refusals": [dict...]}``
    where each refusal records the identity family, the point, and the
    reason the point was declined.
    """
    reports = []
    refusals = []
    for pt in _KDF_GRID:
        try:
            reports.extend(check_kdf_identities(pt))
        except LossOfSignificanceError as exc:
            refusals.append({"family": "kdf", "point": pt, "reason": str(exc)})
    for pt in _KDF_REFUSALS:
        try:
            check_kdf_identities(pt)
            raise AssertionError(f"expected refusal at {pt}")
        except DomainError as exc:
            refusals.append({"family": "kdf", "point": pt, "reason": str(exc)})
    for pt in _HUMBERT_GRID:
        try:
            reports.extend(check_humbert_identities(pt))
        except LossOfSignificanceError as exc:
            refusals.append({"family": "humbert", "point": pt, "reason": str(exc)})
    for pt in _HUMBERT_REFUSALS:
        try:
            check_humbert_identities(pt)
            raise AssertionError(f"expected refusal at {pt}")
        except DomainError as exc:
            refusals.append({"family": "humbert", "point": pt, "reason": str(exc)})
    return {"reports": reports, "refusals": refusals}
