"""Casimir energy of a massless scalar field between plates when position
and momentum obey a minimal-length deformed commutator.

The dimensionless entry point is :func:`deformed_casimir.energy.compute`.
"""
from .energy import compute
from .energy.types import BetaStar, Dimension, EnergyResult, Method, PhysicalSetup
from .errors import ConvergenceError, DomainError, NonFiniteEvaluation, PrecisionFloorError

__version__ = "0.1.0"

__all__ = [
    "BetaStar", "ConvergenceError", "Dimension", "DomainError", "EnergyResult",
    "Method", "NonFiniteEvaluation", "PhysicalSetup", "PrecisionFloorError", "compute",
]
