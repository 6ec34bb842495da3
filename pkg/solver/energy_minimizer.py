"""
Energy Minimizer
Finds zero-curvature metrics directly by minimizing the energy
E(l) = cov(l) − (2π − K̄)·l, whose gradient is K̄ − K̃(l)
"""

import logging
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from config.settings import SolverSettings
from curvature.action import orbit_basis, project_quotient, quotient_basis
from curvature.assembly import covolume_hessian, curvature_vector, prescribed_energy
from curvature.metric import MetricLike, MetricVector, as_lengths, in_decorated_region, metric_vector
from triangulation.complex import Complex

logger = logging.getLogger(__name__)

MAX_BACKTRACKS = 60
# energies closer than this are indistinguishable in double precision
ENERGY_ROUNDING = 1e-13


class SolveStatus(str, Enum):
    """Solver outcome"""
    FOUND = "Found"
    NO_MINIMIZER = "NoMinimizer"
    MAX_ITER = "MaxIter"


class NoMinimizerEvidence(BaseModel):
    """
    Record of unbounded descent

    The solver cannot prove that no minimizer exists; it reports the iterate
    norms, the energies and the smallest gradient norm seen.
    """
    iterate_norms: List[float]
    energies: List[float]
    gradient_floor: float


class SolveResult(BaseModel):
    """Result of one minimization"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    status: SolveStatus
    metric: MetricVector
    iterations: int
    gradient_norm: float
    energy: float
    newton_steps: int = 0
    gradient_history: List[float] = Field(default_factory=list)
    evidence: Optional[NoMinimizerEvidence] = None

    @property
    def l(self) -> np.ndarray:
        return self.metric.l


class EnergyMinimizer:
    """
    Projected Newton descent on the quotient ℝ^E/ℝ̂^V

    Each iteration splits the gradient into its quotient part and its part
    along the vertex action. The quotient part gets a Newton step when the
    iterate is decorated and the restricted Hessian admits a Cholesky
    factorization, a gradient step otherwise. The action part is followed
    by steepest descent: it is constant in l and vanishes exactly when a
    zero-curvature metric can exist, so a nonzero action part drives the
    iterates off to infinity and ends the solve with NoMinimizer.
    Iterates are projected back to the quotient whenever the action part
    is below tolerance.
    """

    def __init__(self, settings: Optional[SolverSettings] = None):
        self.settings = settings or SolverSettings()

    def minimize(
        self,
        c: Complex,
        l0: MetricLike,
        target: Optional[np.ndarray] = None,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None
    ) -> SolveResult:
        """
        Minimize the (prescribed) energy from l0

        Args:
            c: Complex
            l0: Starting metric
            target: Prescribed curvature K̄ (zero when omitted)
            tol: Sup-norm threshold on K̃ − K̄
            max_iter: Iteration cap

        Returns:
            SolveResult with status Found, NoMinimizer or MaxIter
        """
        tol = self.settings.tol if tol is None else tol
        max_iter = self.settings.max_iter if max_iter is None else max_iter
        target_arr = np.zeros(c.m) if target is None else as_lengths(c, target)

        try:
            Q = quotient_basis(c)
            U = orbit_basis(c)
            l = project_quotient(c, l0)

            current = prescribed_energy(c, target_arr, l)
            start_energy = current
            norms: List[float] = []
            energies: List[float] = [current]
            gradients: List[float] = []
            newton_steps = 0

            for iteration in range(max_iter + 1):
                residual = curvature_vector(c, l) - target_arr
                grad_norm = float(np.max(np.abs(residual))) if residual.size else 0.0
                gradients.append(grad_norm)
                norms.append(float(np.max(np.abs(l))) if l.size else 0.0)

                if grad_norm < tol:
                    return self._result(c, SolveStatus.FOUND, l, iteration, grad_norm,
                                        current, newton_steps, gradients)

                if norms[-1] > self.settings.l_max and start_energy - current > self.settings.energy_drop:
                    evidence = NoMinimizerEvidence(
                        iterate_norms=norms,
                        energies=energies,
                        gradient_floor=min(gradients)
                    )
                    logger.info(
                        f"Unbounded descent after {iteration} iterations: "
                        f"|l|={norms[-1]:.3e}, energy drop {start_energy - current:.3e}"
                    )
                    return self._result(c, SolveStatus.NO_MINIMIZER, l, iteration, grad_norm,
                                        current, newton_steps, gradients, evidence)

                if iteration == max_iter:
                    break

                g = -residual
                g_action = U @ (U.T @ g)
                g_quotient = g - g_action

                direction = -g_quotient
                if in_decorated_region(c, l) and Q.shape[1] > 0:
                    try:
                        hessian = Q.T @ covolume_hessian(c, l) @ Q
                        factor = cho_factor(hessian)
                        direction = -Q @ cho_solve(factor, Q.T @ g)
                        newton_steps += 1
                    except LinAlgError:
                        logger.debug(f"Iteration {iteration}: restricted Hessian not positive definite")
                direction = direction - g_action

                slope = float(np.dot(g, direction))
                alpha = 1.0
                for _ in range(MAX_BACKTRACKS):
                    trial = l + alpha * direction
                    trial_energy = prescribed_energy(c, target_arr, trial)
                    slack = ENERGY_ROUNDING * (1.0 + abs(current))
                    if trial_energy <= current + self.settings.armijo_c1 * alpha * slope + slack:
                        break
                    alpha *= 0.5
                else:
                    logger.warning(f"Line search stalled at iteration {iteration}")
                    break

                l = trial
                if np.linalg.norm(g_action) <= tol:
                    l = project_quotient(c, l)
                current = trial_energy
                energies.append(current)
                logger.debug(
                    f"Iteration {iteration}: |K-K̄|={grad_norm:.3e}, step {alpha:.3g}, "
                    f"energy {current:.12g}"
                )

            return self._result(c, SolveStatus.MAX_ITER, l, len(gradients) - 1, gradients[-1],
                                current, newton_steps, gradients)

        except Exception as e:
            logger.error(f"Energy minimization failed: {e}")
            raise

    def _result(
        self,
        c: Complex,
        status: SolveStatus,
        l: np.ndarray,
        iterations: int,
        grad_norm: float,
        current: float,
        newton_steps: int,
        gradients: List[float],
        evidence: Optional[NoMinimizerEvidence] = None
    ) -> SolveResult:
        result = SolveResult(
            status=status,
            metric=metric_vector(c, l),
            iterations=iterations,
            gradient_norm=grad_norm,
            energy=current,
            newton_steps=newton_steps,
            gradient_history=gradients,
            evidence=evidence
        )
        logger.info(
            f"Solver {status.value} after {iterations} iterations "
            f"({newton_steps} Newton), |K-K̄|={grad_norm:.3e}, in_L={result.metric.in_L}"
        )
        return result


def minimize_energy(
    c: Complex,
    l0: MetricLike,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    target: Optional[np.ndarray] = None,
    settings: Optional[SolverSettings] = None
) -> SolveResult:
    """Minimize the energy on c from l0 (see EnergyMinimizer)"""
    return EnergyMinimizer(settings).minimize(c, l0, target=target, tol=tol, max_iter=max_iter)


def cross_validate(
    c: Complex,
    flow_limit: MetricLike,
    solver_limit: MetricLike,
    tol: float,
    target: Optional[np.ndarray] = None
) -> bool:
    """
    Whether two zero-curvature limits are the same point of the quotient

    Args:
        c: Complex
        flow_limit: Limit of a flow run
        solver_limit: Limit of the energy minimizer
        tol: Curvature tolerance both limits must meet; projections must
            agree within 10·tol
        target: Prescribed curvature (zero when omitted)

    Returns:
        True iff the quotient projections agree

    Raises:
        DimensionMismatchError: If either limit does not belong to c
    """
    a = as_lengths(c, flow_limit)
    b = as_lengths(c, solver_limit)
    target_arr = np.zeros(c.m) if target is None else as_lengths(c, target)

    for name, limit in (("flow", a), ("solver", b)):
        residual = float(np.max(np.abs(curvature_vector(c, limit) - target_arr))) if c.m else 0.0
        if residual >= tol:
            logger.warning(f"{name} limit is not a zero of the curvature: |K-K̄|={residual:.3e}")
            return False

    distance = float(np.max(np.abs(project_quotient(c, a) - project_quotient(c, b)))) if c.m else 0.0
    logger.info(f"Quotient distance between limits: {distance:.3e}")
    return distance <= 10.0 * tol
