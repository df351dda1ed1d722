"""
Error hierarchy for hypwave
"""
from typing import Any, Dict, Optional


class HypwaveError(Exception):
    """Base class for every error raised by the package"""


class DomainError(HypwaveError, ValueError):
    """An argument lies outside the domain of the operation"""


class InvalidPointError(DomainError):
    """A point is not on the hyperboloid sheet"""


class AnalyticityError(DomainError):
    """A symbol is not analytic on the requested tube"""


class EvennessError(DomainError):
    """A symbol fails the evenness check m(λ) = m(-λ)"""


class SingularityError(HypwaveError):
    """Evaluation too close to a pole of the c-function"""


class IntegrationError(HypwaveError):
    """A quadrature, series or ODE integration did not converge"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class OverflowIntegralError(IntegrationError):
    """A transform integral evaluated to a non-finite number"""


class CertificationError(HypwaveError):
    """A net could not be certified with the available sample budget"""


class PreconditionError(HypwaveError):
    """An input violates a mathematical hypothesis of the operation"""


class RegimeMismatchError(PreconditionError):
    """Envelope regime and propagation time disagree"""


class UnsupportedInputError(HypwaveError):
    """The input is outside the supported configurations"""


class SupportLeakError(HypwaveError):
    """A computed function spreads beyond its admissible support"""


class BracketError(HypwaveError):
    """Lower h1 bracket exceeds the upper one"""


class UsageError(HypwaveError):
    """Malformed command-line usage"""
