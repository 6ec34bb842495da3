"""
Face-Pairing Gluing Data
Parses, serializes and validates triangulation files

File format (one record per line, '#' starts a comment):

    tetrahedra <N>
    glue <t> <f> -> <t'> <p0p1p2p3>      (4 records per tetrahedron)
    metric <l_0> ... <l_{m-1}>           (optional, last record)

Face f of tetrahedron t is the face opposite vertex f. The permutation maps
vertex i of t to vertex p_i of t', hence face f onto face p_f of t'.
"""

import logging
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

IDENTITY: Tuple[int, int, int, int] = (0, 1, 2, 3)


class GluingParseError(ValueError):
    """Syntax error in a triangulation file"""

    def __init__(self, line: int, field: str, message: str):
        self.line = line
        self.field = field
        super().__init__(f"line {line}, field '{field}': {message}")


class FaceGluing(BaseModel):
    """Gluing of one face to a face of a neighbor tetrahedron"""
    model_config = ConfigDict(frozen=True)

    neighbor: int
    perm: Tuple[int, int, int, int]


class GluingSpec(BaseModel):
    """
    Face pairings of a closed pseudo 3-manifold triangulation

    gluings[t][f] is the gluing of face f of tetrahedron t, or None when the
    face is left open (reported by validate, rejected by build_complex).
    """
    model_config = ConfigDict(frozen=True)

    tet_count: int = Field(gt=0)
    gluings: Tuple[Tuple[Optional[FaceGluing], ...], ...]
    initial_metric: Optional[Tuple[float, ...]] = None

    def gluing(self, tet: int, face: int) -> Optional[FaceGluing]:
        return self.gluings[tet][face]


class ViolationRule(str, Enum):
    """Kinds of broken gluing invariants"""
    OPEN_FACE = "open face"
    NEIGHBOR_OUT_OF_RANGE = "neighbor out of range"
    BAD_PERMUTATION = "not a permutation"
    SELF_GLUED_FACE = "not face-respecting"
    NOT_INVOLUTIVE = "not involutive"


class Violation(BaseModel):
    """One broken invariant at a face"""
    model_config = ConfigDict(frozen=True)

    tet: int
    face: int
    rule: ViolationRule
    detail: str = ""

    def __str__(self) -> str:
        text = f"tet {self.tet} face {self.face}: {self.rule.value}"
        return f"{text} ({self.detail})" if self.detail else text


def _parse_int(token: str, line_no: int, field: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GluingParseError(line_no, field, f"expected an integer, got '{token}'")


def _parse_perm(text: str, line_no: int) -> Tuple[int, int, int, int]:
    if len(text) != 4 or not text.isdigit():
        raise GluingParseError(line_no, "perm", f"malformed permutation '{text}'")
    perm = tuple(int(ch) for ch in text)
    if sorted(perm) != [0, 1, 2, 3]:
        raise GluingParseError(line_no, "perm", f"'{text}' is not a permutation of 0123")
    return perm  # type: ignore[return-value]


def parse_gluing(source: str) -> GluingSpec:
    """
    Parse a triangulation file

    Only syntax is checked here; combinatorial invariants are left to
    validate().

    Args:
        source: File contents

    Returns:
        GluingSpec exactly as written

    Raises:
        GluingParseError: On malformed records, out-of-range tetrahedron or
            face indices, duplicate gluings or misplaced records
    """
    tet_count: Optional[int] = None
    table: List[List[Optional[FaceGluing]]] = []
    metric: Optional[Tuple[float, ...]] = None

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]

        if metric is not None:
            raise GluingParseError(line_no, keyword, "no records may follow 'metric'")

        if tet_count is None:
            if keyword != "tetrahedra" or len(tokens) != 2:
                raise GluingParseError(line_no, "tetrahedra", "first record must be 'tetrahedra <N>'")
            tet_count = _parse_int(tokens[1], line_no, "tetrahedra")
            if tet_count < 1:
                raise GluingParseError(line_no, "tetrahedra", "need at least one tetrahedron")
            table = [[None] * 4 for _ in range(tet_count)]
            continue

        if keyword == "glue":
            if len(tokens) < 6 or tokens[3] != "->":
                raise GluingParseError(line_no, "glue", "expected 'glue <t> <f> -> <t'> <perm>'")
            tet = _parse_int(tokens[1], line_no, "t")
            face = _parse_int(tokens[2], line_no, "f")
            neighbor = _parse_int(tokens[4], line_no, "t'")
            perm = _parse_perm(" ".join(tokens[5:]), line_no)
            if not 0 <= tet < tet_count:
                raise GluingParseError(line_no, "t", f"tetrahedron {tet} out of range")
            if not 0 <= neighbor < tet_count:
                raise GluingParseError(line_no, "t'", f"tetrahedron {neighbor} out of range")
            if not 0 <= face < 4:
                raise GluingParseError(line_no, "f", f"face {face} out of range")
            if table[tet][face] is not None:
                raise GluingParseError(line_no, "f", f"face ({tet},{face}) glued twice")
            table[tet][face] = FaceGluing(neighbor=neighbor, perm=perm)
        elif keyword == "metric":
            values = []
            for index, token in enumerate(tokens[1:]):
                try:
                    values.append(float(token))
                except ValueError:
                    raise GluingParseError(line_no, f"l_{index}", f"expected a number, got '{token}'")
            metric = tuple(values)
        else:
            raise GluingParseError(line_no, keyword, f"unknown record '{keyword}'")

    if tet_count is None:
        raise GluingParseError(0, "tetrahedra", "empty triangulation file")

    spec = GluingSpec(
        tet_count=tet_count,
        gluings=tuple(tuple(row) for row in table),
        initial_metric=metric
    )
    logger.debug(f"Parsed gluing spec with {tet_count} tetrahedra")
    return spec


def read_gluing(path: str) -> GluingSpec:
    """Parse a triangulation file from disk"""
    with open(path, encoding="utf-8") as handle:
        return parse_gluing(handle.read())


def serialize_gluing(spec: GluingSpec, metric: Optional[Tuple[float, ...]] = None) -> str:
    """
    Write a gluing spec in the triangulation file format

    Args:
        spec: Gluing spec (open faces are omitted)
        metric: Metric record to write instead of spec.initial_metric

    Returns:
        File contents; parse_gluing() returns an equal spec
    """
    lines = [f"tetrahedra {spec.tet_count}"]
    for tet, row in enumerate(spec.gluings):
        for face, gluing in enumerate(row):
            if gluing is None:
                continue
            perm = "".join(str(p) for p in gluing.perm)
            lines.append(f"glue {tet} {face} -> {gluing.neighbor} {perm}")

    values = metric if metric is not None else spec.initial_metric
    if values is not None:
        lines.append("metric " + " ".join(repr(float(v)) for v in values))
    return "\n".join(lines) + "\n"


def validate(spec: GluingSpec) -> List[Violation]:
    """
    Check the gluing invariants of a closed pseudo 3-manifold

    Every face is glued; gluings map back to their source with inverse
    permutations; no face is glued to itself. A broken mutual pairing is
    reported once, at the lexicographically smaller face.

    Args:
        spec: Gluing spec to check

    Returns:
        List of violations, empty iff the gluing is valid
    """
    violations: List[Violation] = []

    for tet in range(spec.tet_count):
        for face in range(4):
            gluing = spec.gluings[tet][face]
            if gluing is None:
                violations.append(Violation(tet=tet, face=face, rule=ViolationRule.OPEN_FACE))
                continue
            if sorted(gluing.perm) != [0, 1, 2, 3]:
                violations.append(Violation(
                    tet=tet, face=face, rule=ViolationRule.BAD_PERMUTATION,
                    detail=str(gluing.perm)
                ))
                continue
            if not 0 <= gluing.neighbor < spec.tet_count:
                violations.append(Violation(
                    tet=tet, face=face, rule=ViolationRule.NEIGHBOR_OUT_OF_RANGE,
                    detail=f"neighbor {gluing.neighbor}"
                ))
                continue

            target_face = gluing.perm[face]
            if gluing.neighbor == tet and target_face == face:
                violations.append(Violation(
                    tet=tet, face=face, rule=ViolationRule.SELF_GLUED_FACE,
                    detail="face glued to itself"
                ))
                continue

            back = spec.gluings[gluing.neighbor][target_face]
            if back is None:
                # reported as an open face at the partner
                continue
            if back.neighbor != tet or back.perm[target_face] != face:
                violations.append(Violation(
                    tet=tet, face=face, rule=ViolationRule.NOT_INVOLUTIVE,
                    detail=f"({gluing.neighbor},{target_face}) is glued elsewhere"
                ))
                continue
            composed = tuple(back.perm[gluing.perm[i]] for i in range(4))
            if composed != IDENTITY and (tet, face) < (gluing.neighbor, target_face):
                violations.append(Violation(
                    tet=tet, face=face, rule=ViolationRule.NOT_INVOLUTIVE,
                    detail=f"return gluing composes to {composed}"
                ))

    if violations:
        logger.info(f"Gluing spec has {len(violations)} violation(s)")
    return violations
