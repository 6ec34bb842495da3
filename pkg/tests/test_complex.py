import numpy as np
import pytest

from curvature import orbit_basis, quotient_basis
from triangulation import (
    ComplexValidationError,
    ViolationRule,
    build_complex,
    incidence_matrix,
    is_constant_valence,
    parse_gluing,
    valence_histogram
)

from conftest import FIGURE_EIGHT


def test_figure_eight(figure_eight):
    c = figure_eight
    assert (c.tet_count, c.m, c.n) == (2, 2, 1)
    assert c.valence.tolist() == [6, 6]
    assert incidence_matrix(c).tolist() == [[2], [2]]
    assert c.vertex_corners.tolist() == [8]
    assert valence_histogram(c) == {6: 2}
    assert is_constant_valence(c) == 6
    # class ids follow the smallest local edge
    assert c.local_edge_class[0, 0] == 0
    assert c.edge_classes[0][0] == (0, 0, 1)
    assert np.bincount(c.local_edge_class.ravel()).tolist() == [6, 6]
    assert np.bincount(c.local_edge_class[0]).tolist() == [3, 3]


def test_gieseking_style(gieseking):
    assert (gieseking.tet_count, gieseking.m, gieseking.n) == (1, 1, 1)
    assert gieseking.valence.tolist() == [6]
    assert is_constant_valence(gieseking) == 6


def test_double_tetrahedron(double_tetrahedron):
    c = double_tetrahedron
    assert (c.m, c.n) == (6, 4)
    assert valence_histogram(c) == {2: 6}
    assert is_constant_valence(c) == 2
    assert np.linalg.matrix_rank(c.incidence) == 4
    assert orbit_basis(c).shape == (6, 4)
    assert quotient_basis(c).shape == (6, 2)
    assert c.edge_endpoints[0] == (0, 1)


def test_quads_pair_opposite_edges(figure_eight):
    assert figure_eight.quads[0] == ((0, 0, 1), (0, 2, 3))
    assert figure_eight.quads[5] == ((1, 0, 3), (1, 1, 2))


def test_incidence_matrix_is_a_copy(figure_eight):
    b = incidence_matrix(figure_eight)
    b[0, 0] = 99
    assert figure_eight.incidence[0, 0] == 2


def test_invalid_spec_is_rejected():
    text = FIGURE_EIGHT.read_text(encoding="utf-8").replace("glue 0 0 -> 1 0132\n", "")
    with pytest.raises(ComplexValidationError) as excinfo:
        build_complex(parse_gluing(text))
    assert excinfo.value.violations[0].rule == ViolationRule.OPEN_FACE


def test_gluing_order_does_not_change_classes(figure_eight):
    lines = FIGURE_EIGHT.read_text(encoding="utf-8").splitlines()
    header = [line for line in lines if not line.startswith("glue")]
    gluings = [line for line in lines if line.startswith("glue")]
    shuffled = "\n".join(header[:2] + gluings[::-1] + header[2:])
    c = build_complex(parse_gluing(shuffled))
    assert c.edge_classes == figure_eight.edge_classes
    assert np.array_equal(c.local_edge_class, figure_eight.local_edge_class)
