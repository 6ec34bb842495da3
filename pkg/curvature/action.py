"""
Vertex Action and Quotient Projection

w ∈ ℝ^V acts by (w + l)_e = l_e + w(e₊) + w(e₋), i.e. l ↦ l + B w. The
quotient ℝ^E/ℝ̂^V is represented by the orthogonal complement of the column
space of B, found by SVD with rank tolerance 1e-10 · σ_max so rank-deficient
incidence matrices are handled.
"""

import numpy as np
from scipy.linalg import null_space, orth

from triangulation.complex import Complex
from .metric import DimensionMismatchError, MetricLike, as_lengths

RANK_RCOND = 1e-10


def act(c: Complex, w: np.ndarray, l: MetricLike) -> np.ndarray:
    """
    Apply the vertex action l ↦ l + B w

    Args:
        c: Complex
        w: One weight per vertex class
        l: Metric

    Returns:
        Shifted edge lengths

    Raises:
        DimensionMismatchError: On wrong vector lengths
    """
    w_arr = np.asarray(w, dtype=float)
    if w_arr.shape != (c.n,):
        raise DimensionMismatchError(
            f"Action vector has shape {w_arr.shape}, complex has {c.n} vertex classes"
        )
    return as_lengths(c, l) + c.incidence @ w_arr


def orbit_basis(c: Complex) -> np.ndarray:
    """Orthonormal basis (m × rank B) of the action directions B ℝ^V"""
    return orth(c.incidence.astype(float), rcond=RANK_RCOND)


def quotient_basis(c: Complex) -> np.ndarray:
    """Orthonormal basis (m × (m − rank B)) of the quotient ℝ^E/ℝ̂^V"""
    return null_space(c.incidence.T.astype(float), rcond=RANK_RCOND)


def project_quotient(c: Complex, l: MetricLike) -> np.ndarray:
    """
    Orthogonal projection onto the complement of the column space of B

    Kills the action: project_quotient(act(w, l)) == project_quotient(l).
    """
    lengths = as_lengths(c, l)
    U = orbit_basis(c)
    return lengths - U @ (U.T @ lengths)


def restrict_to_quotient(c: Complex, matrix: np.ndarray) -> np.ndarray:
    """Compress a symmetric m × m operator to quotient coordinates, Qᵀ A Q"""
    Q = quotient_basis(c)
    return Q.T @ matrix @ Q
