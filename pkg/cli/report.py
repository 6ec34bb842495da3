"""
Run Reports
Line-oriented key=value rendering of command results, plus a JSON document
"""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from curvature.action import project_quotient
from curvature.assembly import curvature_vector, total_volume
from curvature.metric import in_decorated_region
from triangulation.complex import Complex, is_constant_valence, valence_histogram

FLAT_VALENCE = 6


def format_float(value: float) -> str:
    return repr(float(value))


def format_vector(values) -> str:
    return ",".join(format_float(v) for v in values)


class ComplexSummary(BaseModel):
    """Combinatorial summary of a complex"""
    tet_count: int
    m: int
    n: int
    valences: Dict[int, int]
    constant_valence: Optional[int] = None

    @classmethod
    def of(cls, c: Complex) -> "ComplexSummary":
        return cls(
            tet_count=c.tet_count,
            m=c.m,
            n=c.n,
            valences=valence_histogram(c),
            constant_valence=is_constant_valence(c)
        )

    @property
    def advisory(self) -> Optional[str]:
        """Warning for constant valence other than 6 (edge-transitivity is not checked)"""
        d = self.constant_valence
        if d is None or d == FLAT_VALENCE:
            return None
        return (
            f"d!=6: constant valence {d} gives curvature 2pi-{d}pi/3 at constant metrics; "
            f"no zero-curvature metric exists if the complex is edge-transitive"
        )

    def line(self) -> str:
        valences = "{" + ",".join(f"{k}:{v}" for k, v in sorted(self.valences.items())) + "}"
        d = self.constant_valence if self.constant_valence is not None else "none"
        return f"m={self.m} n={self.n} valences={valences} constant_valence={d}"


class RunReport(BaseModel):
    """
    Result of one command

    Everything except wall_clock is a deterministic function of the inputs
    and flags.
    """
    command: str
    complex: ComplexSummary
    classification: Optional[str] = None
    limit: Optional[List[float]] = None
    quotient_projection: Optional[List[float]] = None
    curvature_norm: Optional[float] = None
    volume: Optional[float] = None
    rate: Optional[float] = None
    details: Dict[str, str] = Field(default_factory=dict)
    wall_clock: Optional[float] = None

    def attach_limit(self, c: Complex, l: np.ndarray) -> None:
        """Fill limit, its projection, curvature norm and (inside the decorated region) volume"""
        K = curvature_vector(c, l)
        self.limit = [float(v) for v in l]
        self.quotient_projection = [float(v) for v in project_quotient(c, l)]
        self.curvature_norm = float(np.max(np.abs(K))) if K.size else 0.0
        self.volume = total_volume(c, l) if in_decorated_region(c, l) else None

    def render(self) -> str:
        """key=value lines; the first line is the complex summary"""
        lines = [self.complex.line(), f"tet_count={self.complex.tet_count}"]
        advisory = self.complex.advisory
        if advisory:
            lines.append(f"advisory={advisory}")
        lines.append(f"command={self.command}")
        if self.classification is not None:
            lines.append(f"classification={self.classification}")
        if self.limit is not None:
            lines.append(f"limit={format_vector(self.limit)}")
        if self.quotient_projection is not None:
            lines.append(f"quotient_projection={format_vector(self.quotient_projection)}")
        if self.curvature_norm is not None:
            lines.append(f"curvature_norm={format_float(self.curvature_norm)}")
        if self.volume is not None:
            lines.append(f"volume={format_float(self.volume)}")
        if self.rate is not None:
            lines.append(f"rate={format_float(self.rate)}")
        for key, value in self.details.items():
            lines.append(f"{key}={value}")
        if self.wall_clock is not None:
            lines.append(f"wall_clock={self.wall_clock:.3f}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
