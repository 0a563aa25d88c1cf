"""Special functions of communication theory.

Nuttall Q-function, incomplete Toronto function, Rice Ie-function, and
incomplete Lipschitz-Hankel integrals, with quadrature oracles, bounds,
truncation-error majorants, and fading-channel / TIFR-capacity
applications.
"""

from .errors import (
    AccuracyError,
    CommSpecialError,
    ConvergenceError,
    DomainError,
    LossOfSignificanceError,
    RangeError,
)
from .types import (
    EvalResult,
    IdentityReport,
    IlhiQuery,
    Interval,
    NuttallQuery,
    RiceIeQuery,
    TorontoQuery,
)

__version__ = "0.1.0"
