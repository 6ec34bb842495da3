"""
Convergence Rate Analysis
Fits the exponential decay rate of a converged trace and computes the rate
predicted by linearizing the flow at its limit
"""

import logging
from typing import Tuple

import numpy as np

from curvature.action import restrict_to_quotient
from curvature.assembly import covolume_hessian
from curvature.metric import MetricLike
from triangulation.complex import Complex
from .trace import Classification, FlowTrace

logger = logging.getLogger(__name__)

PHASE_START = 1e-3
NOISE_FLOOR = 1e-14
MIN_SAMPLES = 20
# total log-decay over the fitted tail below which it counts as flat
MIN_DECAY = 1e-6


class RateFitError(ValueError):
    """The trace does not support an exponential rate fit"""
    pass


def _residual_series(trace: FlowTrace) -> Tuple[np.ndarray, np.ndarray]:
    if trace.residual_times is not None and trace.residual_norms is not None \
            and len(trace.residual_times) >= MIN_SAMPLES:
        return np.asarray(trace.residual_times), np.asarray(trace.residual_norms)
    return (
        np.array([s.t for s in trace.samples]),
        np.array([s.residual_norm for s in trace.samples])
    )


def fit_rate(
    trace: FlowTrace,
    phase_start: float = PHASE_START,
    noise_floor: float = NOISE_FLOOR,
    min_samples: int = MIN_SAMPLES
) -> Tuple[float, float]:
    """
    Least-squares fit of log‖K̃ − K̄‖∞ ≈ log C − λt over the terminal phase

    The terminal phase is the residuals between noise_floor and phase_start.
    When fewer than min_samples residuals fall in that band, the trailing
    half of the series is used instead.

    Args:
        trace: A Converged trace
        phase_start: Residual below which the tail is treated as linear
        noise_floor: Residuals below this are rounding noise and are skipped
        min_samples: Minimum samples in the fitted tail

    Returns:
        (λ, rms residual of the log-linear fit)

    Raises:
        RateFitError: Trace not Converged, too few samples, or a
            non-decaying tail
    """
    if trace.classification != Classification.CONVERGED:
        raise RateFitError(f"rate fit needs a Converged trace, got {trace.classification.value}")

    times, norms = _residual_series(trace)
    band = (norms <= phase_start) & (norms > noise_floor)
    if np.count_nonzero(band) < min_samples:
        band = np.zeros(norms.size, dtype=bool)
        band[norms.size // 2:] = True
        band &= norms > noise_floor
    if np.count_nonzero(band) < min_samples:
        raise RateFitError(
            f"too few samples in the terminal phase: {np.count_nonzero(band)} < {min_samples}"
        )

    slope, intercept = np.polyfit(times[band], np.log(norms[band]), 1)
    fitted = intercept + slope * times[band]
    residual = float(np.sqrt(np.mean((np.log(norms[band]) - fitted) ** 2)))
    rate = -float(slope)

    span = float(times[band][-1] - times[band][0])
    if rate * span <= MIN_DECAY:
        raise RateFitError(f"non-decaying tail (slope {slope:.3e})")

    logger.debug(f"Fitted rate {rate:.6f} over {np.count_nonzero(band)} samples, rms {residual:.2e}")
    return rate, residual


def linearized_rate(c: Complex, l: MetricLike) -> float:
    """
    Smallest eigenvalue of −∂K̃/∂l restricted to the quotient

    The decay rate of the Ricci flow near a decorated zero-curvature limit.

    Raises:
        OutsideDecoratedRegionError: If l is not a decorated metric
    """
    restricted = restrict_to_quotient(c, covolume_hessian(c, l))
    if restricted.size == 0:
        return float("nan")
    return float(np.linalg.eigvalsh(restricted)[0])
