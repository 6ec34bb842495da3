import math

import mpmath
import numpy as np
import pytest

from curvature import (
    DimensionMismatchError,
    act,
    angle_assignment,
    calabi_energy,
    cone_angles,
    covolume_hessian,
    curvature_jacobian,
    curvature_vector,
    energy,
    f_functional,
    in_decorated_region,
    laplacian,
    metric_vector,
    orbit_basis,
    orbit_obstruction,
    prescribed_energy,
    ricci_curvature,
    total_covolume,
    total_volume
)

from conftest import decorated_figure_eight_metric

mpmath.mp.dps = 30
# twice the regular ideal tetrahedron, from the high-precision Clausen function
FIGURE_EIGHT_VOLUME = float(6 * mpmath.clsin(2, 2 * mpmath.pi / 3) / 2)


def central_difference(f, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    grad = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        grad[i] = (f(x + e) - f(x - e)) / (2 * h)
    return grad


@pytest.mark.parametrize("l", [(1.0, 1.0), (0.0, 0.0), (-2.5, -2.5)])
def test_figure_eight_constant_metrics_are_flat(figure_eight, l):
    curvature = ricci_curvature(figure_eight, l)
    assert curvature.sup_norm < 1e-12
    assert curvature.in_L
    assert np.allclose(curvature.cone_angles, 2 * math.pi)


def test_figure_eight_volume(figure_eight):
    assert FIGURE_EIGHT_VOLUME == pytest.approx(2.0298832128, abs=1e-9)
    assert total_volume(figure_eight, (1.0, 1.0)) == pytest.approx(FIGURE_EIGHT_VOLUME, abs=1e-12)


def test_gieseking_style_is_flat_at_zero(gieseking):
    assert ricci_curvature(gieseking, [0.0]).sup_norm < 1e-12


@pytest.mark.parametrize("value", [0.0, 2.5, -7.0])
def test_double_tetrahedron_constant_curvature(double_tetrahedron, value):
    K = curvature_vector(double_tetrahedron, np.full(6, value))
    assert np.allclose(K, 4 * math.pi / 3, atol=1e-12)


def test_curvature_leaving_the_decorated_region(figure_eight):
    # |a - b| / 2 beyond ln(golden ratio): both tetrahedra flatten
    l = (1.5, -1.5)
    assert not in_decorated_region(figure_eight, l)
    assert not metric_vector(figure_eight, l).in_L
    assert total_volume(figure_eight, l) == pytest.approx(0.0, abs=1e-15)
    assert np.all(np.isfinite(curvature_vector(figure_eight, l)))


def test_angle_assignment(figure_eight):
    assignment = angle_assignment(figure_eight, (0.2, -0.1))
    assert assignment.quad_angles.shape == (2, 3)
    assert np.allclose(assignment.quad_angles.sum(axis=1), math.pi)
    assert np.allclose(assignment.cone_angles, cone_angles(figure_eight, (0.2, -0.1)))
    assert assignment.cone_angles.sum() == pytest.approx(2 * math.pi * 2)


def test_gradients_match_finite_differences(figure_eight, double_tetrahedron):
    rng = np.random.default_rng(1)
    cases = [(figure_eight, decorated_figure_eight_metric(rng)) for _ in range(50)]
    cases += [(figure_eight, np.array([a, a + s * rng.uniform(1.2, 2.5)]))
              for a, s in zip(rng.uniform(-1, 1, 25), rng.choice([-1.0, 1.0], 25))]
    cases += [(double_tetrahedron, rng.uniform(-1, 1, 6)) for _ in range(25)]

    for c, l in cases:
        scale = 1.0 + np.max(np.abs(cone_angles(c, l)))
        assert np.allclose(central_difference(lambda x: total_covolume(c, x), l),
                           cone_angles(c, l), rtol=1e-6, atol=1e-6 * scale)
        assert np.allclose(central_difference(lambda x: energy(c, x), l),
                           -curvature_vector(c, l), rtol=1e-6, atol=1e-6 * scale)


def test_prescribed_energy_gradient(figure_eight):
    target = np.array([0.3, -0.3])
    l = np.array([0.1, 0.2])
    numeric = central_difference(lambda x: prescribed_energy(figure_eight, target, x), l)
    assert np.allclose(numeric, target - curvature_vector(figure_eight, l), atol=1e-6)
    assert prescribed_energy(figure_eight, np.zeros(2), l) == pytest.approx(energy(figure_eight, l))


def test_curvature_jacobian_matches_finite_differences(figure_eight):
    rng = np.random.default_rng(2)
    for _ in range(10):
        l = decorated_figure_eight_metric(rng)
        numeric = np.array([
            central_difference(lambda x: curvature_vector(figure_eight, x)[row], l)
            for row in range(figure_eight.m)
        ])
        assert np.allclose(numeric, curvature_jacobian(figure_eight, l), atol=1e-6)


def test_hessian_kernel_is_the_action(figure_eight, double_tetrahedron):
    rng = np.random.default_rng(4)
    for _ in range(20):
        l = decorated_figure_eight_metric(rng)
        H = covolume_hessian(figure_eight, l)
        assert np.allclose(H, H.T)
        assert np.allclose(H @ figure_eight.incidence, 0.0, atol=1e-9)
        assert np.linalg.matrix_rank(H, tol=1e-9) == figure_eight.m - 1
        assert np.array_equal(laplacian(figure_eight, l), -curvature_jacobian(figure_eight, l))

    H = covolume_hessian(double_tetrahedron, rng.uniform(-0.2, 0.2, 6))
    U = orbit_basis(double_tetrahedron)
    assert np.allclose(H @ U, 0.0, atol=1e-9)
    assert np.linalg.matrix_rank(H, tol=1e-9) == 2


def test_orbit_obstruction(figure_eight, double_tetrahedron):
    assert np.allclose(orbit_obstruction(figure_eight), 0.0)
    assert np.allclose(orbit_obstruction(double_tetrahedron), 4 * math.pi)
    rng = np.random.default_rng(6)
    for _ in range(5):
        l = rng.uniform(-2, 2, 6)
        B = double_tetrahedron.incidence
        assert np.allclose(B.T @ curvature_vector(double_tetrahedron, l),
                           orbit_obstruction(double_tetrahedron), atol=1e-12)


def test_energies_under_the_action(figure_eight):
    l0 = np.array([0.4, -0.1])
    l = np.array([0.2, 0.3])
    w = np.array([0.7])
    assert f_functional(figure_eight, l0, act(figure_eight, w, l)) == pytest.approx(
        f_functional(figure_eight, l0, l), abs=1e-12)
    # the flat-at-constant figure-eight has a vanishing obstruction, so H̃ is invariant too
    assert energy(figure_eight, act(figure_eight, w, l)) == pytest.approx(energy(figure_eight, l), abs=1e-12)
    assert calabi_energy(figure_eight, (1.0, 1.0)) == pytest.approx(0.0, abs=1e-24)


def test_wrong_length_metric(figure_eight):
    with pytest.raises(DimensionMismatchError):
        curvature_vector(figure_eight, [0.0, 0.0, 0.0])
