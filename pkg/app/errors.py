"""
Exception hierarchy for the double Bragg diffraction toolkit.

Every error carries a short ``fail_type`` tag and a ``detail`` dict so the CLI,
the HTTP layer and the logs can report the failing quantity without parsing
messages. ``exit_code`` is the process exit status the CLI maps it to.
"""

from typing import Any, Dict, Optional


class DbdError(Exception):
    """Base class for all toolkit errors"""

    fail_type = "error"
    exit_code = 1

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail = dict(detail or {})

    def to_dict(self) -> Dict[str, Any]:
        return {"fail_type": self.fail_type, "message": self.message, "detail": self.detail}


class ConfigurationError(DbdError):
    """Invalid input, configuration or request"""

    fail_type = "configuration"
    exit_code = 2


class InvalidParameterError(ConfigurationError, ValueError):
    fail_type = "invalid_parameter"


class MissingSiContextError(ConfigurationError):
    fail_type = "missing_si_context"


class IncompatibleTierError(ConfigurationError):
    fail_type = "incompatible_tier"


class UnknownFigureError(ConfigurationError):
    fail_type = "unknown_figure"


class BasisTooSmallError(ConfigurationError):
    fail_type = "basis_too_small"


class InconsistentBasisError(ConfigurationError):
    fail_type = "inconsistent_basis"


class NumericalToleranceError(DbdError):
    """A numerical method could not meet its accuracy contract"""

    fail_type = "numerical_tolerance"
    exit_code = 3


class ToleranceNotMetError(NumericalToleranceError):
    fail_type = "tolerance_not_met"


class NormDriftError(NumericalToleranceError):
    fail_type = "norm_drift"


class GridTooCoarseError(NumericalToleranceError):
    fail_type = "grid_too_coarse"


class QuadratureResolutionTooCoarseError(NumericalToleranceError):
    fail_type = "quadrature_resolution_too_coarse"


class InvalidPopulationError(NumericalToleranceError, ValueError):
    fail_type = "invalid_population"
