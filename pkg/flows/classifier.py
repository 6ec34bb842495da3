"""
Trajectory Classification
Decides Converged / Diverging verdicts from the running state of a flow
"""

import logging
import math
from collections import deque
from typing import Deque, Optional, Tuple

from .trace import Classification

logger = logging.getLogger(__name__)


class TrajectoryClassifier:
    """
    Running classifier for one flow

    Converged: the residual sup-norm drops below tol.
    Diverging: the metric sup-norm exceeds l_max while the smallest residual
    over the trailing window (of length `window` in flow time) stays above
    √tol. Anything else stays open; the caller declares Undetermined at t_max.
    """

    def __init__(self, tol: float, window: float, l_max: float):
        self.tol = tol
        self.window = window
        self.l_max = l_max
        self.divergence_floor = math.sqrt(tol)
        self._history: Deque[Tuple[float, float]] = deque()

    def observe(self, t: float, metric_norm: float, residual_norm: float) -> Optional[Classification]:
        """
        Record one state and return a verdict if one is reached

        Args:
            t: Flow time
            metric_norm: ‖l(t)‖∞
            residual_norm: ‖K̃(l(t)) − K̄‖∞

        Returns:
            CONVERGED, DIVERGING or None
        """
        if residual_norm < self.tol:
            logger.debug(f"Converged at t={t:.4f} with residual {residual_norm:.3e}")
            return Classification.CONVERGED

        self._history.append((t, residual_norm))
        while self._history and self._history[0][0] < t - self.window:
            self._history.popleft()

        if metric_norm > self.l_max and t >= self.window:
            window_min = min(r for _, r in self._history)
            if window_min > self.divergence_floor:
                logger.debug(
                    f"Diverging at t={t:.4f}: |l|={metric_norm:.3e}, "
                    f"window min residual {window_min:.3e}"
                )
                return Classification.DIVERGING
        return None
