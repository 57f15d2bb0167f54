"""Exception hierarchy for hcfsim.

Every error raised on purpose by the simulator derives from
``SimulationError`` so the CLI can report the class name and exit non-zero.
"""

from typing import Any, Optional


class SimulationError(Exception):
    """Base class for all simulator errors."""


class ConfigurationError(SimulationError, ValueError):
    """A configuration is inconsistent or malformed."""


class UnsupportedConfigurationError(ConfigurationError):
    """A valid configuration that a requested scheme cannot handle."""


class DomainError(SimulationError, ValueError):
    """An argument lies outside the domain of a model function."""


class DimensionError(SimulationError, ValueError):
    """Array shapes do not line up."""


class NumericalError(SimulationError, ArithmeticError):
    """A factorization or solve failed."""


class DegenerateDropError(NumericalError):
    """A Gram matrix is numerically singular; the drop must be resampled."""

    def __init__(self, message: str, condition: Optional[float] = None):
        super().__init__(message)
        self.condition = condition


class ConvergenceError(SimulationError, RuntimeError):
    """An iterative solver ran out of iterations."""

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InsufficientSamplesError(SimulationError, ValueError):
    """Too few inner realizations to estimate drop-level moments."""


class EmptySampleError(SimulationError, ValueError):
    """A statistic was requested on an empty sample."""


class ExportError(SimulationError, OSError):
    """Results could not be written."""


class CampaignError(SimulationError, RuntimeError):
    """A campaign aborted; completed variants are kept in ``partial_result``."""

    def __init__(self, message: str, partial_result: Any = None):
        super().__init__(message)
        self.partial_result = partial_result


__all__ = [
    "SimulationError",
    "ConfigurationError",
    "UnsupportedConfigurationError",
    "DomainError",
    "DimensionError",
    "NumericalError",
    "DegenerateDropError",
    "ConvergenceError",
    "InsufficientSamplesError",
    "EmptySampleError",
    "ExportError",
    "CampaignError",
]
