"""
Exception hierarchy for the Stochastic Duel Solver
Validation failures map to CLI exit code 1, numerical-accuracy failures to exit code 2
"""

from typing import List, Optional


class DuelError(Exception):
    """Base class for every solver error"""

    exit_code: int = 1


class ValidationError(DuelError, ValueError):
    """Malformed parameters detected at construction or load time"""


class DomainError(ValidationError):
    """Argument outside the mathematical domain of an operation"""


class UnattainableError(ValidationError):
    """Requested probability is never reached within the curve's horizon"""


class NoCrossingError(ValidationError):
    """P_a(t) + P_b(t) never reaches 1 within the search range"""


class DegenerateProcessError(ValidationError):
    """Renewal process whose epochs never advance"""


class InsufficientPathError(ValidationError):
    """Epoch path ends before the requested threshold"""


class NoSolutionError(ValidationError):
    """Classical duel whose success probabilities never sum to 1"""


class ScenarioValidationError(ValidationError):
    """Scenario document rejected; carries one line-anchored message per problem"""

    def __init__(self, messages: List[str]):
        self.messages = messages
        super().__init__("; ".join(messages))


class AnalyticUnavailableError(DuelError):
    """The transform route cannot evaluate this scenario; use Monte Carlo instead"""


class NumericalAccuracyError(DuelError):
    """Numerical diagnostics exceeded their tolerance"""

    exit_code = 2


class QuadratureAccuracyError(NumericalAccuracyError):
    """Adaptive quadrature did not reach the requested accuracy"""

    def __init__(self, message: str, estimate: float, abs_error: Optional[float] = None):
        self.estimate = estimate
        self.abs_error = abs_error
        super().__init__(f"{message} (estimate={estimate!r}, error bound={abs_error!r})")


class DerivativeAccuracyError(NumericalAccuracyError):
    """Finite differences are not stable under step halving"""
