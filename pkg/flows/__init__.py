"""
Curvature flows: configuration, integrators, runs, classification, analysis
"""

from .config import FlowKind, FlowConfig
from .trace import (
    Classification,
    FlowSample,
    FlowTrace,
    IntegratorFailure,
    write_trace,
    trace_to_text,
    read_trace
)
from .integrators import rk4_step, AdaptiveIntegrator
from .classifier import TrajectoryClassifier
from .analysis import RateFitError, fit_rate, linearized_rate
from .flow import vector_field, flow_energy, make_sample, step, integrate, run
from .uniqueness import UniquenessReport, uniqueness_check
from .sweep import initial_metrics, multi_start, limit_spread

__all__ = [
    "FlowKind",
    "FlowConfig",
    "Classification",
    "FlowSample",
    "FlowTrace",
    "IntegratorFailure",
    "write_trace",
    "trace_to_text",
    "read_trace",
    "rk4_step",
    "AdaptiveIntegrator",
    "TrajectoryClassifier",
    "RateFitError",
    "fit_rate",
    "linearized_rate",
    "vector_field",
    "flow_energy",
    "make_sample",
    "step",
    "integrate",
    "run",
    "UniquenessReport",
    "uniqueness_check",
    "initial_metrics",
    "multi_start",
    "limit_spread"
]
