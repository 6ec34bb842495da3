"""
Combinatorics of a Closed Pseudo 3-Manifold
Edge and vertex classes, valences, quads and the edge-vertex incidence matrix

Local edge (t, i, j) with i < j is the edge between vertices i and j of
tetrahedron t; it has flat index 6t + k where k is its position in
(01, 02, 03, 12, 13, 23). Class ids are assigned in order of each class's
smallest flat index, which is the lexicographic order of (t, i, j).
"""

import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.cluster.hierarchy import DisjointSet

from geometry.tetra_kernel import QUAD_EDGES, TETRA_EDGES
from .gluing import GluingSpec, Violation, validate

logger = logging.getLogger(__name__)

LocalEdge = Tuple[int, int, int]
LocalVertex = Tuple[int, int]

_EDGE_INDEX: Dict[Tuple[int, int], int] = {pair: k for k, pair in enumerate(TETRA_EDGES)}


class ComplexValidationError(ValueError):
    """A gluing spec that breaks the pseudo-manifold invariants"""

    def __init__(self, violations: List[Violation]):
        self.violations = violations
        summary = "; ".join(str(v) for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"invalid gluing: {summary}{more}")


class Complex(BaseModel):
    """
    Glued tetrahedra with their edge and vertex classes

    Immutable after build_complex(); shared read-only by any number of
    flow runs.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    gluing: GluingSpec
    edge_classes: Tuple[Tuple[LocalEdge, ...], ...]
    vertex_classes: Tuple[Tuple[LocalVertex, ...], ...]
    # (tet_count, 6) edge class of each local edge, (tet_count, 4) vertex class of each corner
    local_edge_class: np.ndarray
    local_vertex_class: np.ndarray
    valence: np.ndarray
    quads: Tuple[Tuple[LocalEdge, LocalEdge], ...]
    edge_endpoints: Tuple[Tuple[int, int], ...]
    incidence: np.ndarray
    vertex_corners: np.ndarray

    @property
    def tet_count(self) -> int:
        return self.gluing.tet_count

    @property
    def m(self) -> int:
        """Number of edge classes"""
        return len(self.edge_classes)

    @property
    def n(self) -> int:
        """Number of vertex classes"""
        return len(self.vertex_classes)


def _edge_flat(tet: int, i: int, j: int) -> int:
    return 6 * tet + _EDGE_INDEX[(min(i, j), max(i, j))]


def _ordered_classes(sets: DisjointSet, size: int) -> Tuple[List[List[int]], np.ndarray]:
    """Group 0..size-1 by root, ordered by smallest member"""
    by_root: Dict[int, List[int]] = {}
    for item in range(size):
        by_root.setdefault(sets[item], []).append(item)
    classes = sorted(by_root.values(), key=lambda members: members[0])
    labels = np.empty(size, dtype=np.int64)
    for class_id, members in enumerate(classes):
        labels[members] = class_id
    return classes, labels


def build_complex(spec: GluingSpec) -> Complex:
    """
    Compute edge/vertex classes, valences, quads and incidence

    Classes are the orbits of local edges (vertices) under the face-pairing
    identifications, found by union-find; the result does not depend on the
    order in which gluings are processed.

    Args:
        spec: Gluing spec passing validate()

    Returns:
        Complex

    Raises:
        ComplexValidationError: If validate(spec) reports violations
    """
    violations = validate(spec)
    if violations:
        logger.error(f"Cannot build complex: {len(violations)} violation(s)")
        raise ComplexValidationError(violations)

    tet_count = spec.tet_count
    edge_sets = DisjointSet(range(6 * tet_count))
    vertex_sets = DisjointSet(range(4 * tet_count))

    for tet in range(tet_count):
        for face in range(4):
            gluing = spec.gluings[tet][face]
            perm = gluing.perm
            corners = [v for v in range(4) if v != face]
            for v in corners:
                vertex_sets.merge(4 * tet + v, 4 * gluing.neighbor + perm[v])
            for a in range(3):
                for b in range(a + 1, 3):
                    i, j = corners[a], corners[b]
                    edge_sets.merge(
                        _edge_flat(tet, i, j),
                        _edge_flat(gluing.neighbor, perm[i], perm[j])
                    )

    edge_members, edge_labels = _ordered_classes(edge_sets, 6 * tet_count)
    vertex_members, vertex_labels = _ordered_classes(vertex_sets, 4 * tet_count)
    local_edge_class = edge_labels.reshape(tet_count, 6)
    local_vertex_class = vertex_labels.reshape(tet_count, 4)

    edge_classes = tuple(
        tuple((flat // 6,) + TETRA_EDGES[flat % 6] for flat in members)
        for members in edge_members
    )
    vertex_classes = tuple(
        tuple((flat // 4, flat % 4) for flat in members)
        for members in vertex_members
    )

    m, n = len(edge_classes), len(vertex_classes)
    valence = np.array([len(members) for members in edge_members], dtype=np.int64)

    quads = tuple(
        ((tet,) + TETRA_EDGES[a], (tet,) + TETRA_EDGES[b])
        for tet in range(tet_count)
        for a, b in QUAD_EDGES
    )

    endpoints = []
    incidence = np.zeros((m, n), dtype=np.int64)
    for class_id, members in enumerate(edge_classes):
        tet, i, j = members[0]
        ends = tuple(sorted((int(local_vertex_class[tet, i]), int(local_vertex_class[tet, j]))))
        endpoints.append(ends)
        for v in ends:
            incidence[class_id, v] += 1

    vertex_corners = np.bincount(vertex_labels, minlength=n).astype(np.int64)

    complex_ = Complex(
        gluing=spec,
        edge_classes=edge_classes,
        vertex_classes=vertex_classes,
        local_edge_class=local_edge_class,
        local_vertex_class=local_vertex_class,
        valence=valence,
        quads=quads,
        edge_endpoints=tuple(endpoints),
        incidence=incidence,
        vertex_corners=vertex_corners
    )
    logger.info(
        f"Built complex: {tet_count} tetrahedra, {m} edge classes, {n} vertex classes"
    )
    return complex_


def incidence_matrix(c: Complex) -> np.ndarray:
    """
    Edge-vertex incidence B (m × n)

    B[e, v] counts the endpoints of edge class e in vertex class v, so a loop
    edge contributes 2 and every row sums to 2.
    """
    return c.incidence.copy()


def valence_histogram(c: Complex) -> Dict[int, int]:
    """Number of edge classes per valence"""
    return dict(sorted(Counter(int(d) for d in c.valence).items()))


def is_constant_valence(c: Complex) -> Optional[int]:
    """
    The common valence d if every edge class has it, else None

    Constant valence is necessary for edge-transitivity, not sufficient;
    automorphisms are not searched.
    """
    values = set(int(d) for d in c.valence)
    return values.pop() if len(values) == 1 else None
