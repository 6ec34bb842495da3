"""
Direct energy minimization for zero-curvature metrics
"""

from .energy_minimizer import (
    SolveStatus,
    NoMinimizerEvidence,
    SolveResult,
    EnergyMinimizer,
    minimize_energy,
    cross_validate
)

__all__ = [
    "SolveStatus",
    "NoMinimizerEvidence",
    "SolveResult",
    "EnergyMinimizer",
    "minimize_energy",
    "cross_validate"
]
