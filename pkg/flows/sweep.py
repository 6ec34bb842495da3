"""
Multi-Start Sweeps
Runs one flow from several seeded initial metrics, optionally across worker
processes, and compares the limits in the quotient
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

from curvature.action import project_quotient
from triangulation.complex import Complex
from .config import FlowConfig
from .flow import run
from .trace import Classification, FlowTrace, IntegratorFailure

logger = logging.getLogger(__name__)


def initial_metrics(c: Complex, count: int, seed: int, radius: float = 1.0) -> List[np.ndarray]:
    """
    Seeded initial metrics, uniform in [−radius, radius]^m

    Each start draws from its own child of SeedSequence(seed), so start i is
    the same whatever count is.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(child).uniform(-radius, radius, c.m) for child in children]


def _run_one(args: Tuple[Complex, np.ndarray, FlowConfig]) -> FlowTrace:
    c, l0, cfg = args
    try:
        return run(c, l0, cfg)
    except IntegratorFailure as e:
        return e.trace


def multi_start(
    c: Complex,
    cfg: FlowConfig,
    count: int,
    seed: int = 0,
    jobs: int = 1,
    radius: float = 1.0
) -> List[FlowTrace]:
    """
    Run cfg from `count` seeded initial metrics

    Args:
        c: Complex
        cfg: Flow configuration
        count: Number of starts
        seed: Base seed
        jobs: Worker processes; 1 runs in-process
        radius: Sup-norm bound of the initial metrics

    Returns:
        Traces in seed order; failed runs carry classification Failed
    """
    if count < 1:
        raise ValueError("count must be at least 1")

    tasks = [(c, l0, cfg) for l0 in initial_metrics(c, count, seed, radius)]
    logger.info(f"Multi-start sweep: {count} runs, seed={seed}, jobs={jobs}")

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            traces = list(pool.map(_run_one, tasks))
    else:
        traces = [_run_one(task) for task in tasks]

    verdicts = [t.classification.value for t in traces]
    logger.info(f"Sweep verdicts: {dict((v, verdicts.count(v)) for v in sorted(set(verdicts)))}")
    return traces


def limit_spread(c: Complex, traces: List[FlowTrace]) -> Optional[float]:
    """
    Largest pairwise distance between quotient projections of Converged limits

    None when fewer than two runs converged.
    """
    projections = [
        project_quotient(c, t.limit)
        for t in traces
        if t.classification == Classification.CONVERGED and t.limit is not None
    ]
    if len(projections) < 2:
        return None
    return max(float(np.linalg.norm(a - b)) for a, b in combinations(projections, 2))
