"""
Curvature assembly on a complex: metrics, Ricci curvature, energies, vertex action
"""

from .metric import (
    MetricVector,
    Curvature,
    AngleAssignment,
    DimensionMismatchError,
    as_lengths,
    restrict,
    in_decorated_region,
    metric_vector
)
from .assembly import (
    angle_assignment,
    cone_angles,
    curvature_vector,
    ricci_curvature,
    total_volume,
    total_covolume,
    energy,
    prescribed_energy,
    f_functional,
    calabi_energy,
    covolume_hessian,
    curvature_jacobian,
    laplacian,
    orbit_obstruction
)
from .action import (
    act,
    orbit_basis,
    quotient_basis,
    project_quotient,
    restrict_to_quotient
)

__all__ = [
    "MetricVector",
    "Curvature",
    "AngleAssignment",
    "DimensionMismatchError",
    "as_lengths",
    "restrict",
    "in_decorated_region",
    "metric_vector",
    "angle_assignment",
    "cone_angles",
    "curvature_vector",
    "ricci_curvature",
    "total_volume",
    "total_covolume",
    "energy",
    "prescribed_energy",
    "f_functional",
    "calabi_energy",
    "covolume_hessian",
    "curvature_jacobian",
    "laplacian",
    "orbit_obstruction",
    "act",
    "orbit_basis",
    "quotient_basis",
    "project_quotient",
    "restrict_to_quotient"
]
