"""
ODE Integrators for autonomous flows dl/dt = F(l)

Classic fixed-step fourth-order Runge-Kutta, plus the embedded
Dormand-Prince 4(5) pair from scipy for adaptive stepping.
"""

import logging
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import RK45

logger = logging.getLogger(__name__)

VectorField = Callable[[np.ndarray], np.ndarray]


def rk4_step(
    field: VectorField,
    y: np.ndarray,
    h: float,
    k1: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    One classic RK4 step

    Args:
        field: Autonomous vector field
        y: Current state
        h: Step size
        k1: field(y) if already evaluated

    Returns:
        State after one step
    """
    if k1 is None:
        k1 = field(y)
    k2 = field(y + 0.5 * h * k1)
    k3 = field(y + 0.5 * h * k2)
    k4 = field(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


class AdaptiveIntegrator:
    """
    Step-by-step adaptive integration with scipy's RK45

    Each call to advance() performs one accepted step and returns the new
    (t, y).
    """

    def __init__(
        self,
        field: VectorField,
        y0: np.ndarray,
        t_bound: float,
        atol: float,
        first_step: Optional[float] = None
    ):
        self._solver = RK45(
            lambda t, y: field(y),
            0.0,
            np.asarray(y0, dtype=float),
            t_bound,
            rtol=max(atol, 1e-12),
            atol=atol,
            first_step=first_step
        )

    def advance(self) -> Tuple[float, np.ndarray]:
        """
        Take one accepted step

        Raises:
            RuntimeError: If the step-size control fails
        """
        message = self._solver.step()
        if self._solver.status == "failed":
            raise RuntimeError(f"adaptive step failed: {message}")
        return float(self._solver.t), np.array(self._solver.y)

    @property
    def finished(self) -> bool:
        return self._solver.status == "finished"
