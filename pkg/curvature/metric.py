"""
Metric and Curvature Records
"""

from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from geometry.tetra_kernel import decorated_mask
from triangulation.complex import Complex


class DimensionMismatchError(ValueError):
    """A vector whose length does not match the complex"""


class MetricVector(BaseModel):
    """
    Generalized decorated metric l ∈ ℝ^E

    in_L records whether every tetrahedron is a genuine decorated ideal
    tetrahedron under l.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    l: np.ndarray
    in_L: bool


class Curvature(BaseModel):
    """Generalized Ricci curvature K̃_e = 2π − k_l(e) with the cone angles k_l"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    K: np.ndarray
    cone_angles: np.ndarray
    in_L: bool

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.K))) if self.K.size else 0.0


class AngleAssignment(BaseModel):
    """Extended dihedral angle per quad of each tetrahedron, and the cone angle per edge"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    # (tet_count, 3) in quad order {01,23}, {02,13}, {03,12}
    quad_angles: np.ndarray
    cone_angles: np.ndarray


MetricLike = Union[MetricVector, np.ndarray, Sequence[float]]


def as_lengths(c: Complex, l: MetricLike) -> np.ndarray:
    """
    Edge-length array of a metric, checked against the complex

    Raises:
        DimensionMismatchError: If the length is not the number of edge classes
    """
    values = l.l if isinstance(l, MetricVector) else l
    arr = np.asarray(values, dtype=float)
    if arr.shape != (c.m,):
        raise DimensionMismatchError(
            f"Metric has shape {arr.shape}, complex has {c.m} edge classes"
        )
    return arr


def restrict(c: Complex, l: MetricLike) -> np.ndarray:
    """Per-tetrahedron edge lengths, shape (tet_count, 6)"""
    return as_lengths(c, l)[c.local_edge_class]


def in_decorated_region(c: Complex, l: MetricLike) -> bool:
    """Whether l is a genuine decorated metric (every tetrahedron decorated)"""
    return bool(np.all(decorated_mask(restrict(c, l))))


def metric_vector(c: Complex, l: MetricLike) -> MetricVector:
    """Wrap raw lengths as a MetricVector with its decorated-region flag"""
    arr = as_lengths(c, l).copy()
    return MetricVector(l=arr, in_L=in_decorated_region(c, arr))
