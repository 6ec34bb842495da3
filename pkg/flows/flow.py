"""
Curvature Flows
Integrates the extended Ricci flow dl/dt = K̃(l), the prescribed-curvature
flow dl/dt = K̃(l) − K̄, the combinatorial Calabi flow dl/dt = Δ K̃(l) and
the classic flow confined to the decorated region, and classifies the
resulting trajectories
"""

import logging
from typing import Iterator, Optional, Tuple

import numpy as np

from curvature.assembly import (
    calabi_energy,
    curvature_vector,
    energy,
    laplacian,
    prescribed_energy,
    total_volume
)
from curvature.metric import MetricLike, as_lengths, in_decorated_region
from geometry.tetra_kernel import OutsideDecoratedRegionError
from triangulation.complex import Complex
from .analysis import RateFitError, fit_rate
from .classifier import TrajectoryClassifier
from .config import FlowConfig, FlowKind
from .integrators import AdaptiveIntegrator, VectorField, rk4_step
from .trace import Classification, FlowSample, FlowTrace, IntegratorFailure

logger = logging.getLogger(__name__)


def vector_field(c: Complex, cfg: FlowConfig) -> VectorField:
    """
    The right-hand side of the selected flow

    The Calabi field raises OutsideDecoratedRegionError off the decorated
    region, where Δ = −∂K̃/∂l is undefined.
    """
    target = cfg.target_for(c)

    if cfg.kind == FlowKind.RICCI:
        return lambda l: curvature_vector(c, l)
    if cfg.kind in (FlowKind.PRESCRIBED, FlowKind.CLASSIC):
        return lambda l: curvature_vector(c, l) - target
    return lambda l: laplacian(c, l) @ curvature_vector(c, l)


def flow_energy(c: Complex, cfg: FlowConfig, l: np.ndarray) -> float:
    """Functional the selected flow descends"""
    if cfg.kind == FlowKind.RICCI:
        return energy(c, l)
    if cfg.kind in (FlowKind.PRESCRIBED, FlowKind.CLASSIC):
        return prescribed_energy(c, cfg.target_for(c), l)
    return calabi_energy(c, l)


def make_sample(c: Complex, cfg: FlowConfig, t: float, l: np.ndarray) -> FlowSample:
    """Evaluate the recorded quantities at one state"""
    K = curvature_vector(c, l)
    residual = K - cfg.target_for(c)
    return FlowSample(
        t=float(t),
        l=np.array(l, dtype=float),
        K=K,
        H=energy(c, l),
        energy=flow_energy(c, cfg, l),
        volume=total_volume(c, l),
        residual_norm=float(np.max(np.abs(residual))) if residual.size else 0.0,
        in_L=in_decorated_region(c, l)
    )


def step(c: Complex, l: MetricLike, cfg: FlowConfig) -> np.ndarray:
    """
    One classic Runge-Kutta step of size cfg.step

    Args:
        c: Complex
        l: Current metric
        cfg: Flow configuration

    Returns:
        Metric after one step

    Raises:
        OutsideDecoratedRegionError: For a Calabi step off the decorated region
    """
    return rk4_step(vector_field(c, cfg), as_lengths(c, l), cfg.step)


def integrate(c: Complex, l0: MetricLike, cfg: FlowConfig) -> Iterator[Tuple[float, np.ndarray]]:
    """Fixed-step states (t, l) on [0, t_max] without classification or early stop"""
    field = vector_field(c, cfg)
    l = as_lengths(c, l0).copy()
    t = 0.0
    steps = 0
    yield t, l
    while t < cfg.t_max * (1.0 - 1e-12):
        t_next = min((steps + 1) * cfg.step, cfg.t_max)
        l = rk4_step(field, l, t_next - t)
        t = t_next
        steps += 1
        yield t, l


def run(c: Complex, l0: MetricLike, cfg: FlowConfig) -> FlowTrace:
    """
    Integrate a flow until it is classified

    Converged when ‖K̃ − K̄‖∞ < tol_converge; Diverging when ‖l‖∞ > l_max
    while the residual stayed above √tol_converge over the trailing window;
    Undetermined at t_max. A classic run is Singular at the first accepted
    state outside the decorated region; its maximal existence time lies in
    (singular_time − h, singular_time], or is 0 when l0 is already outside.

    Args:
        c: Complex
        l0: Initial metric
        cfg: Flow configuration

    Returns:
        FlowTrace with samples, verdict, limit and (when Converged and
        enough terminal data exist) the fitted exponential rate

    Raises:
        IntegratorFailure: On a non-finite state, or a Calabi run leaving
            the decorated region; carries the last good sample
    """
    l = as_lengths(c, l0).copy()
    target = cfg.target_for(c)
    field = vector_field(c, cfg)
    classifier = TrajectoryClassifier(cfg.tol_converge, cfg.window, cfg.l_max)

    samples = [make_sample(c, cfg, 0.0, l)]
    times, norms = [], []
    t = 0.0
    accepted = 0
    classification: Optional[Classification] = None
    singular_time: Optional[float] = None

    logger.info(
        f"Starting {cfg.kind.value} flow: m={c.m}, t_max={cfg.t_max}, "
        f"{'adaptive' if cfg.adaptive else f'h={cfg.step}'}"
    )

    def fail(message: str) -> IntegratorFailure:
        failure = IntegratorFailure(message, last_sample=samples[-1])
        failure.trace = FlowTrace(
            kind=cfg.kind.value,
            samples=samples,
            classification=Classification.FAILED,
            residual_times=np.array(times),
            residual_norms=np.array(norms),
            failure=message
        )
        logger.error(f"Flow failed at t={t:.6g}: {message}")
        return failure

    try:
        adaptive = (
            AdaptiveIntegrator(field, l, cfg.t_max, cfg.adaptive_atol, first_step=cfg.step)
            if cfg.adaptive else None
        )

        while True:
            residual = curvature_vector(c, l) - target
            residual_norm = float(np.max(np.abs(residual))) if residual.size else 0.0
            times.append(t)
            norms.append(residual_norm)

            if cfg.kind == FlowKind.CLASSIC and not in_decorated_region(c, l):
                classification = Classification.SINGULAR
                singular_time = t
                break

            classification = classifier.observe(t, float(np.max(np.abs(l))), residual_norm)
            if classification is not None:
                break
            if t >= cfg.t_max * (1.0 - 1e-12):
                classification = Classification.UNDETERMINED
                break

            if adaptive is not None:
                t_next, l_next = adaptive.advance()
            else:
                t_next = min((accepted + 1) * cfg.step, cfg.t_max)
                k1 = residual if cfg.kind != FlowKind.CALABI else None
                l_next = rk4_step(field, l, t_next - t, k1)

            if not np.all(np.isfinite(l_next)):
                raise fail("non-finite state")

            if (accepted + 1) % cfg.record_every == 0:
                samples.append(make_sample(c, cfg, t_next, l_next))
            l, t = l_next, t_next
            accepted += 1

    except OutsideDecoratedRegionError:
        raise fail("calabi flow left the decorated region")
    except RuntimeError as e:
        if isinstance(e, IntegratorFailure):
            raise
        raise fail(str(e))

    if samples[-1].t != t:
        samples.append(make_sample(c, cfg, t, l))

    trace = FlowTrace(
        kind=cfg.kind.value,
        samples=samples,
        classification=classification,
        limit=l.copy() if classification == Classification.CONVERGED else None,
        residual_times=np.array(times),
        residual_norms=np.array(norms),
        singular_time=singular_time
    )

    if classification == Classification.CONVERGED:
        logger.info(
            f"Converged at t={t:.4f} after {accepted} steps, "
            f"residual {samples[-1].residual_norm:.3e}"
        )
        try:
            trace.rate, trace.rate_residual = fit_rate(trace)
        except RateFitError as e:
            logger.warning(f"Could not fit convergence rate: {e}")
    else:
        logger.info(f"Flow classified {classification.value} at t={t:.4f} after {accepted} steps")

    return trace
