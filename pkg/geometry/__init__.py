"""
Per-tetrahedron geometry: extended angles, Lobachevsky function, volume, co-volume
"""

from .lobachevsky import lobachevsky, clausen2
from .tetra_kernel import (
    TETRA_EDGES,
    QUAD_EDGES,
    EDGE_QUAD,
    OutsideDecoratedRegionError,
    triangle_angles,
    quad_lengths,
    log_quad_lengths,
    quad_angles,
    dihedral_angles,
    is_decorated,
    decorated_mask,
    tetra_volume,
    tetra_covolume,
    tetra_cov_gradient,
    quad_hessians,
    tetra_angle_jacobian,
    vertex_action
)

__all__ = [
    "lobachevsky",
    "clausen2",
    "TETRA_EDGES",
    "QUAD_EDGES",
    "EDGE_QUAD",
    "OutsideDecoratedRegionError",
    "triangle_angles",
    "quad_lengths",
    "log_quad_lengths",
    "quad_angles",
    "dihedral_angles",
    "is_decorated",
    "decorated_mask",
    "tetra_volume",
    "tetra_covolume",
    "tetra_cov_gradient",
    "quad_hessians",
    "tetra_angle_jacobian",
    "vertex_action"
]
