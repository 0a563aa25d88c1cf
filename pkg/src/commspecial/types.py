"""Shared parameter-bundle and result types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import DomainError


@dataclass(frozen=True)
class EvalResult:
    """Universal return type of every evaluation route.

    Attributes
    ----------
    value : float
        The computed function value.
    method : str
        Tag of the evaluation route that produced the value
        (e.g. ``"kdf"``, ``"poly"``, ``"series"``, ``"oracle"``).
    est_error : float
        Non-negative estimate of the numerical error.
    terms : int
        Number of series terms (or quadrature evaluations) consumed.
    """

    value: float
    method: str
    est_error: float = 0.0
    terms: int = 0

    def __post_init__(self) -> None:
        if self.est_error < 0:
            raise DomainError("est_error must be non-negative")
        if self.terms < 0:
            raise DomainError("terms must be non-negative")


@dataclass(frozen=True)
class Interval:
    """Certified lower/upper pair returned by bound operations."""

    lower: float
    upper: float

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class NuttallQuery:
    """Arguments (m, n, a, b) of the Nuttall Q-function Q_{m,n}(a, b)."""

    m: float
    n: float
    a: float
    b: float

    def __post_init__(self) -> None:
        if self.b < 0:
            raise DomainError("NuttallQuery requires b >= 0")


@dataclass(frozen=True)
class TorontoQuery:
    """Arguments (m, n, r, B) of the incomplete Toronto function T_B(m, n, r)."""

    m: float
    n: float
    r: float
    B: float

    def __post_init__(self) -> None:
        if self.B <= 0:
            raise DomainError("TorontoQuery requires B > 0")


@dataclass(frozen=True)
class RiceIeQuery:
    """Arguments (k, x) of the Rice Ie-function Ie(k, x)."""

    k: float
    x: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.k <= 1.0:
            raise DomainError("RiceIeQuery requires 0 <= k <= 1")
        if self.x < 0:
            raise DomainError("RiceIeQuery requires x >= 0")


@dataclass(frozen=True)
class IlhiQuery:
    """Arguments (m, n, a, x) of the incomplete Lipschitz-Hankel
    integral Ie_{m,n}(x; a) over the modified Bessel function I_n."""

    m: float
    n: float
    a: float
    x: float

    def __post_init__(self) -> None:
        if self.x <= 0:
            raise DomainError("IlhiQuery requires x > 0")


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check: relative residual between the two sides."""

    identity_id: str
    point: tuple
    lhs: float
    rhs: float
    residual: float = field(init=False)
    note: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "residual", abs(self.lhs - self.rhs) / max(1.0, abs(self.lhs))
        )


def as_dict(obj: Any) -> dict:
    """Stable-key dict view of a dataclass instance (for JSON reports)."""
    from dataclasses import asdict

    return asdict(obj)
