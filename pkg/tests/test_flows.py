import math

import numpy as np
import pytest

from curvature import act, curvature_vector, energy, prescribed_energy, project_quotient, restrict
from curvature.metric import DimensionMismatchError
from flows import (
    Classification,
    FlowConfig,
    FlowKind,
    IntegratorFailure,
    initial_metrics,
    integrate,
    limit_spread,
    multi_start,
    run,
    step,
    vector_field
)
from geometry import dihedral_angles

from conftest import decorated_figure_eight_metric


def limit_angles(c, l):
    return dihedral_angles(restrict(c, l))


def test_step_at_a_flat_metric_is_the_identity(figure_eight):
    assert np.allclose(step(figure_eight, (1.0, 1.0), FlowConfig()), [1.0, 1.0], atol=1e-14)


def test_step_on_the_double_tetrahedron(double_tetrahedron):
    cfg = FlowConfig(step=0.01)
    l = step(double_tetrahedron, np.zeros(6), cfg)
    assert np.allclose(l, 0.01 * 4 * math.pi / 3, atol=1e-12)


def test_prescribed_fixed_point(figure_eight):
    l = np.array([0.3, 0.1])
    cfg = FlowConfig(kind=FlowKind.PRESCRIBED, target_curvature=tuple(curvature_vector(figure_eight, l)))
    assert np.allclose(step(figure_eight, l, cfg), l, atol=1e-14)


def test_ricci_flow_converges_to_the_regular_structure(figure_eight):
    trace = run(figure_eight, (0.3, -0.2), FlowConfig(t_max=200.0))
    assert trace.classification == Classification.CONVERGED
    assert np.max(np.abs(curvature_vector(figure_eight, trace.limit))) < 1e-10
    assert np.allclose(limit_angles(figure_eight, trace.limit), math.pi / 3, atol=1e-8)
    assert trace.final.t <= 200.0
    assert trace.rate is not None and trace.rate > 0


def test_ricci_energy_is_non_increasing(figure_eight):
    trace = run(figure_eight, (0.9, -0.6), FlowConfig(record_every=1))
    energies = np.array([s.energy for s in trace.samples])
    slack = 1e-9 * (1.0 + np.abs(energies[:-1]))
    assert np.all(np.diff(energies) <= slack)


def test_random_starts_reach_one_quotient_point(figure_eight):
    traces = multi_start(figure_eight, FlowConfig(t_max=200.0), count=10, seed=2024)
    assert all(t.classification == Classification.CONVERGED for t in traces)
    assert limit_spread(figure_eight, traces) < 1e-8
    for t in traces:
        assert np.allclose(limit_angles(figure_eight, t.limit), math.pi / 3, atol=1e-8)


def test_initial_metrics_are_seeded(figure_eight):
    first = initial_metrics(figure_eight, 4, seed=5)
    again = initial_metrics(figure_eight, 6, seed=5)
    for a, b in zip(first, again):
        assert np.array_equal(a, b)
    assert all(np.max(np.abs(l)) <= 1.0 for l in first)


def test_multi_start_in_worker_processes_matches_serial(figure_eight):
    cfg = FlowConfig(t_max=50.0)
    serial = multi_start(figure_eight, cfg, count=3, seed=9)
    parallel = multi_start(figure_eight, cfg, count=3, seed=9, jobs=2)
    for a, b in zip(serial, parallel):
        assert a.classification == b.classification
        assert np.array_equal(a.final.l, b.final.l)


def test_double_tetrahedron_diverges(double_tetrahedron):
    cfg = FlowConfig(step=0.05, t_max=300.0)
    trace = run(double_tetrahedron, np.zeros(6), cfg)
    assert trace.classification == Classification.DIVERGING
    assert np.max(np.abs(trace.final.l)) > 1e3
    assert min(s.residual_norm for s in trace.samples) >= 1.0
    assert trace.limit is None and trace.rate is None


def test_flow_commutes_with_the_action(figure_eight):
    cfg = FlowConfig(t_max=20.0)
    w = np.array([0.37])
    l0 = np.array([0.5, -0.3])
    base = run(figure_eight, l0, cfg)
    shifted = run(figure_eight, act(figure_eight, w, l0), cfg)
    for a, b in zip(base.samples, shifted.samples):
        assert a.t == b.t
        assert np.allclose(b.l, act(figure_eight, w, a.l), atol=1e-9)


def test_prescribed_flow_recovers_the_metric(figure_eight):
    rng = np.random.default_rng(10)
    for _ in range(5):
        target_metric = decorated_figure_eight_metric(rng, width=0.6)
        cfg = FlowConfig(
            kind=FlowKind.PRESCRIBED,
            target_curvature=tuple(curvature_vector(figure_eight, target_metric))
        )
        trace = run(figure_eight, np.zeros(2), cfg)
        assert trace.classification == Classification.CONVERGED
        assert np.allclose(project_quotient(figure_eight, trace.limit),
                           project_quotient(figure_eight, target_metric), atol=1e-7)


def test_calabi_flow_decreases_its_energy(figure_eight):
    ricci = run(figure_eight, (0.1, -0.1), FlowConfig())
    for start in [(0.1, -0.1), (-0.05, 0.12), (0.2, 0.05), (0.0, 0.15), (-0.3, -0.2)]:
        calabi = run(figure_eight, start, FlowConfig(kind=FlowKind.CALABI, record_every=1))
        assert calabi.classification == Classification.CONVERGED
        energies = np.array([s.energy for s in calabi.samples])
        assert np.all(np.diff(energies) <= 1e-15)
        assert np.allclose(project_quotient(figure_eight, calabi.limit),
                           project_quotient(figure_eight, ricci.limit), atol=1e-7)


def test_calabi_flow_refuses_to_leave_the_decorated_region(figure_eight):
    with pytest.raises(IntegratorFailure) as excinfo:
        run(figure_eight, (1.5, -1.5), FlowConfig(kind=FlowKind.CALABI))
    failure = excinfo.value
    assert failure.last_sample is not None and failure.last_sample.t == 0.0
    assert failure.trace.classification == Classification.FAILED


def test_short_horizon_is_undetermined(figure_eight):
    trace = run(figure_eight, (0.9, -0.6), FlowConfig(t_max=0.05))
    assert trace.classification == Classification.UNDETERMINED
    assert trace.final.t == pytest.approx(0.05)


def test_adaptive_integration_converges(figure_eight):
    trace = run(figure_eight, (0.3, -0.2), FlowConfig(adaptive=True, t_max=200.0))
    assert trace.classification == Classification.CONVERGED
    assert np.allclose(limit_angles(figure_eight, trace.limit), math.pi / 3, atol=1e-8)


def test_samples_follow_record_every(figure_eight):
    trace = run(figure_eight, (0.9, -0.6), FlowConfig(t_max=1.0, record_every=25))
    times = [s.t for s in trace.samples]
    assert times[:5] == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])
    assert len(trace.residual_norms) == 101


def test_vector_field_kinds(figure_eight):
    l = np.array([0.3, -0.2])
    K = curvature_vector(figure_eight, l)
    assert np.allclose(vector_field(figure_eight, FlowConfig())(l), K)
    calabi = vector_field(figure_eight, FlowConfig(kind=FlowKind.CALABI))(l)
    # Δ is positive semidefinite
    assert float(np.dot(K, calabi)) >= -1e-15


def test_target_of_the_wrong_length(figure_eight):
    cfg = FlowConfig(kind=FlowKind.PRESCRIBED, target_curvature=(0.0, 0.0, 0.0))
    with pytest.raises(DimensionMismatchError):
        run(figure_eight, (0.0, 0.0), cfg)


def test_prescribed_energy_is_non_increasing(figure_eight):
    target_metric = np.array([0.2, -0.25])
    cfg = FlowConfig(
        kind=FlowKind.PRESCRIBED,
        target_curvature=tuple(curvature_vector(figure_eight, target_metric)),
        record_every=1
    )
    trace = run(figure_eight, (-0.4, 0.3), cfg)
    assert trace.classification == Classification.CONVERGED
    energies = np.array([s.energy for s in trace.samples])
    slack = 1e-9 * (1.0 + np.abs(energies[:-1]))
    assert np.all(np.diff(energies) <= slack)


def test_samples_record_both_energies(figure_eight):
    target = curvature_vector(figure_eight, np.array([0.2, -0.25]))
    cfg = FlowConfig(kind=FlowKind.PRESCRIBED, target_curvature=tuple(target), t_max=1.0)
    for s in run(figure_eight, (-0.4, 0.3), cfg).samples:
        assert s.H == energy(figure_eight, s.l)
        assert s.energy == prescribed_energy(figure_eight, target, s.l)
    for s in run(figure_eight, (-0.4, 0.3), FlowConfig(t_max=1.0)).samples:
        assert s.H == s.energy


def test_halving_the_step_keeps_the_limit(figure_eight):
    coarse = run(figure_eight, (0.3, -0.2), FlowConfig(step=0.01, t_max=200.0))
    fine = run(figure_eight, (0.3, -0.2), FlowConfig(step=0.005, t_max=200.0))
    assert coarse.classification == fine.classification == Classification.CONVERGED
    difference = project_quotient(figure_eight, coarse.limit) - project_quotient(figure_eight, fine.limit)
    assert np.max(np.abs(difference)) < 1e-9


def test_curvature_stays_small_after_convergence(figure_eight):
    trace = run(figure_eight, (0.3, -0.2), FlowConfig(t_max=200.0))
    settled = float(np.max(np.abs(curvature_vector(figure_eight, trace.limit))))
    for _, l in integrate(figure_eight, trace.limit, FlowConfig(t_max=10.0)):
        assert np.max(np.abs(curvature_vector(figure_eight, l))) <= settled * (1.0 + 1e-6) + 1e-15


def test_extended_flow_enters_the_decorated_region(figure_eight):
    trace = run(figure_eight, (1.5, -1.5), FlowConfig(t_max=200.0))
    assert trace.classification == Classification.CONVERGED
    assert not trace.samples[0].in_L
    assert trace.final.in_L
    assert np.allclose(limit_angles(figure_eight, trace.limit), math.pi / 3, atol=1e-8)


def test_classic_flow_is_singular_outside_the_decorated_region(figure_eight):
    trace = run(figure_eight, (1.5, -1.5), FlowConfig(kind=FlowKind.CLASSIC))
    assert trace.classification == Classification.SINGULAR
    assert trace.singular_time == 0.0
    assert len(trace.samples) == 1 and not trace.final.in_L
    assert trace.limit is None


def test_classic_flow_matches_the_extended_flow_inside(figure_eight):
    classic = run(figure_eight, (0.3, -0.2), FlowConfig(kind=FlowKind.CLASSIC, t_max=200.0))
    extended = run(figure_eight, (0.3, -0.2), FlowConfig(t_max=200.0))
    assert classic.classification == Classification.CONVERGED
    assert classic.singular_time is None
    assert all(s.in_L for s in classic.samples)
    assert np.allclose(classic.limit, extended.limit, atol=1e-12)


def test_classic_flow_reaches_the_boundary_in_finite_time(figure_eight):
    # every metric with |a - b| past the boundary has this curvature
    target = tuple(curvature_vector(figure_eight, np.array([1.5, -1.5])))

    classic = run(figure_eight, np.zeros(2),
                  FlowConfig(kind=FlowKind.CLASSIC, target_curvature=target, t_max=50.0, record_every=1))
    assert classic.classification == Classification.SINGULAR
    assert 0.0 < classic.singular_time < 50.0
    assert all(s.in_L for s in classic.samples[:-1])
    assert not classic.final.in_L
    assert classic.final.t == classic.singular_time

    extended = run(figure_eight, np.zeros(2),
                   FlowConfig(kind=FlowKind.PRESCRIBED, target_curvature=target, t_max=50.0))
    assert extended.classification == Classification.CONVERGED
    assert not extended.final.in_L
