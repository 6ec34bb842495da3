"""
Triangulation combinatorics: gluing files, validation, edge and vertex classes
"""

from .gluing import (
    FaceGluing,
    GluingSpec,
    GluingParseError,
    Violation,
    ViolationRule,
    parse_gluing,
    read_gluing,
    serialize_gluing,
    validate
)
from .complex import (
    Complex,
    ComplexValidationError,
    build_complex,
    incidence_matrix,
    valence_histogram,
    is_constant_valence
)

__all__ = [
    "FaceGluing",
    "GluingSpec",
    "GluingParseError",
    "Violation",
    "ViolationRule",
    "parse_gluing",
    "read_gluing",
    "serialize_gluing",
    "validate",
    "Complex",
    "ComplexValidationError",
    "build_complex",
    "incidence_matrix",
    "valence_histogram",
    "is_constant_valence"
]
