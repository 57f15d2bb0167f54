"""Command modules for the hcfsim CLI."""

from .run import run
from .cost import cost
from .validate import validate

__all__ = [
    "run",
    "cost",
    "validate",
]
