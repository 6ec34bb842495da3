"""
Per-tetrahedron geometry of generalized decorated ideal tetrahedra

A tetrahedron carries six signed edge lengths ordered by vertex pair
(01, 02, 03, 12, 13, 23). Opposite edges form the three quads
q0 = {01, 23}, q1 = {02, 13}, q2 = {03, 12}. Quad q has length
x_q = exp((l_ij + l_kh) / 2); the dihedral angle at both edges of q is the
angle opposite x_q in the (possibly degenerate) Euclidean triangle with
sides x_0, x_1, x_2.

Every function here is pure. The batched helpers take arrays of shape
(..., 6) so the curvature assembly evaluates all tetrahedra at once.
"""

import math
from typing import Tuple

import numpy as np

from .lobachevsky import lobachevsky


TETRA_EDGES: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
QUAD_EDGES: Tuple[Tuple[int, int], ...] = ((0, 5), (1, 4), (2, 3))
# quad index of each of the six edges
EDGE_QUAD = np.array([0, 1, 2, 2, 1, 0])

# l[..., QUAD_A] + l[..., QUAD_B] gives the three quad sums
_QUAD_A = np.array([0, 1, 2])
_QUAD_B = np.array([5, 4, 3])


class OutsideDecoratedRegionError(ValueError):
    """Raised when a smooth-region quantity is requested off the decorated region"""


def _check_lengths(l: np.ndarray) -> np.ndarray:
    arr = np.asarray(l, dtype=float)
    if arr.shape[-1] != 6:
        raise ValueError(f"Expected 6 edge lengths per tetrahedron, got shape {arr.shape}")
    return arr


def log_quad_lengths(l: np.ndarray) -> np.ndarray:
    """Half quad sums (l_ij + l_kh) / 2, the logarithms of the quad lengths"""
    arr = _check_lengths(l)
    return 0.5 * (arr[..., _QUAD_A] + arr[..., _QUAD_B])


def quad_lengths(l: np.ndarray) -> np.ndarray:
    """
    Quad lengths x_q = exp((l_ij + l_kh) / 2)

    Args:
        l: Six signed edge lengths (or a stack of them)

    Returns:
        Three positive quad lengths per tetrahedron
    """
    return np.exp(log_quad_lengths(l))


def _normalized(y: np.ndarray) -> np.ndarray:
    # Angles are scale invariant; shift so the largest side is 1.
    return np.exp(y - np.max(y, axis=-1, keepdims=True))


def _degenerate_mask(x: np.ndarray) -> np.ndarray:
    """x_i >= x_j + x_k, per side"""
    total = np.sum(x, axis=-1, keepdims=True)
    return x >= total - x


def _angles(x: np.ndarray) -> np.ndarray:
    """Extended triangle angles for side lengths x of shape (..., 3)"""
    x0, x1, x2 = x[..., 0], x[..., 1], x[..., 2]
    sq0, sq1, sq2 = x0 * x0, x1 * x1, x2 * x2

    with np.errstate(divide="ignore", invalid="ignore"):
        cos0 = (sq1 + sq2 - sq0) / (2.0 * x1 * x2)
        cos1 = (sq0 + sq2 - sq1) / (2.0 * x0 * x2)
        cos2 = (sq0 + sq1 - sq2) / (2.0 * x0 * x1)
    cosines = np.stack([cos0, cos1, cos2], axis=-1)
    angles = np.arccos(np.clip(np.nan_to_num(cosines, nan=1.0), -1.0, 1.0))

    degenerate = _degenerate_mask(x)
    if np.any(degenerate):
        # only the longest side can be degenerate once rounding is discounted
        longest = np.argmax(x, axis=-1)[..., None] == np.arange(3)
        flat = np.where(longest, math.pi, 0.0)
        any_degenerate = np.any(degenerate, axis=-1, keepdims=True)
        angles = np.where(any_degenerate, flat, angles)
    return angles


def triangle_angles(x1: float, x2: float, x3: float) -> Tuple[float, float, float]:
    """
    Inner angles of the generalized Euclidean triangle with sides x1, x2, x3

    Angle a_i is opposite side x_i. When x_i >= x_j + x_k the triangle is
    degenerate and a_i = π, a_j = a_k = 0.

    Args:
        x1: First side length
        x2: Second side length
        x3: Third side length

    Returns:
        (a1, a2, a3), summing to π

    Raises:
        ValueError: If any side is not positive
    """
    sides = np.array([x1, x2, x3], dtype=float)
    if not np.all(sides > 0):
        raise ValueError(f"Triangle sides must be positive, got {tuple(sides)}")
    a = _angles(sides / np.max(sides))
    return float(a[0]), float(a[1]), float(a[2])


def quad_angles(l: np.ndarray) -> np.ndarray:
    """
    One extended dihedral angle per quad

    Args:
        l: Edge lengths of shape (..., 6)

    Returns:
        Angles of shape (..., 3), summing to π per tetrahedron
    """
    return _angles(_normalized(log_quad_lengths(l)))


def dihedral_angles(l: np.ndarray) -> np.ndarray:
    """
    Extended dihedral angles at the six edges

    Opposite edges share the angle of their quad, so vertex sums are π.

    Args:
        l: Edge lengths of shape (..., 6)

    Returns:
        Angles of shape (..., 6) in edge order
    """
    return quad_angles(l)[..., EDGE_QUAD]


def is_decorated(l: np.ndarray) -> bool:
    """
    Whether the lengths describe a genuine decorated ideal tetrahedron

    True iff the quad lengths satisfy all strict triangle inequalities.
    """
    return bool(np.all(decorated_mask(l)))


def decorated_mask(l: np.ndarray) -> np.ndarray:
    """Per-tetrahedron strict triangle inequality test for a stack (..., 6)"""
    x = _normalized(log_quad_lengths(l))
    return ~np.any(_degenerate_mask(x), axis=-1)


def tetra_volume(l: np.ndarray) -> float:
    """
    Volume ½ Σ_{i<j} Λ(α_ij)

    Hyperbolic volume of the ideal tetrahedron when decorated, zero when
    degenerate.
    """
    return float(np.sum(lobachevsky(quad_angles(l)), axis=-1))


def tetra_covolume(l: np.ndarray) -> float:
    """Co-volume 2 vol(l) + Σ α_ij l_ij"""
    arr = _check_lengths(l)
    alpha = quad_angles(arr)
    volume = np.sum(lobachevsky(alpha), axis=-1)
    return float(2.0 * volume + np.sum(alpha[..., EDGE_QUAD] * arr, axis=-1))


def tetra_cov_gradient(l: np.ndarray) -> np.ndarray:
    """Gradient of the co-volume, which is the dihedral angle vector"""
    return dihedral_angles(l)


def quad_hessians(l: np.ndarray) -> np.ndarray:
    """
    Angle derivatives in quad coordinates, ∂α_p / ∂(2 ln x_q)

    M[p, p] = x_p² / (4A) and M[p, q] = −x_p x_q cos α_r / (4A), with A the
    triangle area. Symmetric, rows sum to zero, rank two.

    Args:
        l: Edge lengths of shape (..., 6), every tetrahedron decorated

    Returns:
        Matrices of shape (..., 3, 3)

    Raises:
        OutsideDecoratedRegionError: If some tetrahedron is not decorated
    """
    x = _normalized(log_quad_lengths(l))
    if np.any(_degenerate_mask(x)):
        raise OutsideDecoratedRegionError(
            "Angle derivatives are only defined on decorated tetrahedra"
        )
    alpha = _angles(x)
    area = 0.5 * x[..., 1] * x[..., 2] * np.sin(alpha[..., 0])
    denom = (4.0 * area)[..., None, None]

    cosines = np.cos(alpha)
    # off-diagonal (p, q) uses the cosine of the remaining angle r
    opposite = np.array([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    outer = x[..., :, None] * x[..., None, :]
    off = -outer * cosines[..., opposite]
    eye = np.eye(3, dtype=bool)
    m = np.where(eye, outer, off) / denom
    return m


def tetra_angle_jacobian(l: np.ndarray) -> np.ndarray:
    """
    Jacobian ∂α_ij / ∂l_kh, equal to the Hessian of the co-volume

    Symmetric, rank two, with kernel the image of the ℝ⁴ vertex action.

    Args:
        l: Six edge lengths strictly inside the decorated region

    Returns:
        6×6 matrix in edge order

    Raises:
        OutsideDecoratedRegionError: If l is not decorated
    """
    m = quad_hessians(_check_lengths(l))
    return m[..., EDGE_QUAD[:, None], EDGE_QUAD[None, :]]


def vertex_action(w: np.ndarray, l: np.ndarray) -> np.ndarray:
    """Shift (w + l)_ij = l_ij + w_i + w_j of one tetrahedron by vertex weights"""
    w_arr = np.asarray(w, dtype=float)
    if w_arr.shape != (4,):
        raise ValueError(f"Expected 4 vertex weights, got shape {w_arr.shape}")
    shift = np.array([w_arr[i] + w_arr[j] for i, j in TETRA_EDGES])
    return _check_lengths(l) + shift
