"""
Global Curvature Quantities on a Complex
Cone angles, generalized Ricci curvature, volume, co-volume, energies and
the curvature Jacobian, assembled from the per-tetrahedron kernel
"""

import logging
import math
from typing import Optional

import numpy as np

from geometry.lobachevsky import lobachevsky
from geometry.tetra_kernel import (
    EDGE_QUAD,
    OutsideDecoratedRegionError,
    decorated_mask,
    quad_angles,
    quad_hessians
)
from triangulation.complex import Complex
from .metric import (
    AngleAssignment,
    Curvature,
    MetricLike,
    as_lengths,
    restrict
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def _cone_angles(c: Complex, alpha: np.ndarray) -> np.ndarray:
    """Sum the six edge angles of every tetrahedron into their edge classes"""
    return np.bincount(
        c.local_edge_class.ravel(),
        weights=alpha[:, EDGE_QUAD].ravel(),
        minlength=c.m
    )


def angle_assignment(c: Complex, l: MetricLike) -> AngleAssignment:
    """
    Extended dihedral angles α_l of every quad

    Args:
        c: Complex
        l: Metric on the edge classes

    Returns:
        Quad angles per tetrahedron and cone angles per edge class
    """
    alpha = quad_angles(restrict(c, l))
    return AngleAssignment(quad_angles=alpha, cone_angles=_cone_angles(c, alpha))


def cone_angles(c: Complex, l: MetricLike) -> np.ndarray:
    """Total dihedral angle k_l(e) around each edge class"""
    return _cone_angles(c, quad_angles(restrict(c, l)))


def curvature_vector(c: Complex, l: MetricLike) -> np.ndarray:
    """K̃(l) as a bare array, the flow vector field"""
    return TWO_PI - cone_angles(c, l)


def ricci_curvature(c: Complex, l: MetricLike) -> Curvature:
    """
    Generalized Ricci curvature K̃_e(l) = 2π − Σ_{q∼e} α_l(q)

    An edge class of valence d receives d angle terms. Summed over edges,
    Σ K̃_e = 2π(m − tet_count).
    """
    local = restrict(c, l)
    alpha = quad_angles(local)
    k = _cone_angles(c, alpha)
    return Curvature(
        K=TWO_PI - k,
        cone_angles=k,
        in_L=bool(np.all(decorated_mask(local)))
    )


def total_volume(c: Complex, l: MetricLike) -> float:
    """Sum of tetrahedron volumes ½ Σ Λ(α_ij); zero on degenerate tetrahedra"""
    alpha = quad_angles(restrict(c, l))
    return float(np.sum(lobachevsky(alpha)))


def total_covolume(c: Complex, l: MetricLike) -> float:
    """
    Co-volume Σ_σ cov(l_σ) = 2 vol(l) + l · k_l
    """
    local = restrict(c, l)
    alpha = quad_angles(local)
    volume = np.sum(lobachevsky(alpha))
    return float(2.0 * volume + np.sum(alpha[:, EDGE_QUAD] * local))


def energy(c: Complex, l: MetricLike) -> float:
    """
    Energy H̃(l) = cov(l) − 2π Σ_e l_e

    Its gradient is −K̃, so the Ricci flow is its negative gradient flow.
    """
    lengths = as_lengths(c, l)
    return total_covolume(c, lengths) - TWO_PI * float(np.sum(lengths))


def prescribed_energy(c: Complex, target: np.ndarray, l: MetricLike) -> float:
    """
    Energy cov(l) − (2π − K̄) · l of the prescribed-curvature problem

    Gradient K̄ − K̃; equals energy() when K̄ = 0.
    """
    lengths = as_lengths(c, l)
    target_arr = as_lengths(c, target)
    return total_covolume(c, lengths) - float(np.dot(TWO_PI - target_arr, lengths))


def f_functional(c: Complex, l0: MetricLike, l: MetricLike) -> float:
    """
    F_{l₀}(l) = cov(l) − k_{l₀} · l

    Invariant under the vertex action; equals H̃ when K̃(l₀) = 0.
    """
    lengths = as_lengths(c, l)
    return total_covolume(c, lengths) - float(np.dot(cone_angles(c, l0), lengths))


def calabi_energy(c: Complex, l: MetricLike) -> float:
    """Combinatorial Calabi energy ‖K̃‖² / 2"""
    K = curvature_vector(c, l)
    return 0.5 * float(np.dot(K, K))


def covolume_hessian(c: Complex, l: MetricLike) -> np.ndarray:
    """
    Hessian of the co-volume (= ∂k_l/∂l), assembled per tetrahedron

    Symmetric positive semidefinite on the decorated region.

    Raises:
        OutsideDecoratedRegionError: If l is not a decorated metric
    """
    local = restrict(c, l)
    m_quads = quad_hessians(local)
    # quad-coordinate matrices embedded by edge-class incidence: P^T M P
    incidence = np.zeros((c.tet_count, 3, c.m))
    tets = np.repeat(np.arange(c.tet_count), 6)
    np.add.at(incidence, (tets, np.tile(EDGE_QUAD, c.tet_count), c.local_edge_class.ravel()), 1.0)
    return np.einsum("tpe,tpq,tqf->ef", incidence, m_quads, incidence)


def curvature_jacobian(c: Complex, l: MetricLike) -> np.ndarray:
    """
    Jacobian ∂K̃/∂l = −Hess(H̃) = −Hess(cov)

    Symmetric negative semidefinite with kernel the column space of the
    incidence matrix.

    Raises:
        OutsideDecoratedRegionError: If l is not a decorated metric
    """
    try:
        return -covolume_hessian(c, l)
    except OutsideDecoratedRegionError:
        logger.debug("Curvature Jacobian requested outside the decorated region")
        raise


def laplacian(c: Complex, l: MetricLike) -> np.ndarray:
    """Discrete Laplace operator Δ = −∂K̃/∂l"""
    return covolume_hessian(c, l)


def orbit_obstruction(c: Complex, target: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Bᵀ(K̃(l) − K̄), which does not depend on l

    Each corner of a tetrahedron contributes its three angles, summing to π,
    so Bᵀ k_l = π · corners and Bᵀ K̃ = 2π · deg − π · corners. A nonzero
    value rules out any metric with curvature K̄ and makes the matching
    energy decrease linearly along the vertex action.
    """
    degrees = c.incidence.sum(axis=0)
    value = TWO_PI * degrees - math.pi * c.vertex_corners
    if target is not None:
        value = value - c.incidence.T @ as_lengths(c, target)
    return value.astype(float)
