"""
Flow Configuration
"""

from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.settings import FlowSettings
from curvature.metric import DimensionMismatchError
from triangulation.complex import Complex


class FlowKind(str, Enum):
    """
    Vector field being integrated

    classic is the non-extended Ricci flow dl/dt = K(l) − K̄ on the decorated
    region only (K̄ = 0 unless given); it stops when it reaches the boundary.
    """
    RICCI = "ricci"
    PRESCRIBED = "prescribed"
    CALABI = "calabi"
    CLASSIC = "classic"


TARGETED_KINDS = (FlowKind.PRESCRIBED, FlowKind.CLASSIC)


class FlowConfig(BaseModel):
    """
    Parameters of one flow run

    Defaults match config.settings.FlowSettings.
    """
    model_config = ConfigDict(frozen=True)

    kind: FlowKind = FlowKind.RICCI
    target_curvature: Optional[Tuple[float, ...]] = None
    step: float = Field(default=0.01, gt=0)
    adaptive: bool = False
    adaptive_atol: float = Field(default=1e-10, gt=0)
    t_max: float = Field(default=300.0, gt=0)
    tol_converge: float = Field(default=1e-10, gt=0)
    window: float = Field(default=10.0, gt=0)
    l_max: float = Field(default=1e3, gt=0)
    record_every: int = Field(default=10, ge=1)

    @model_validator(mode="after")
    def check_target(self) -> "FlowConfig":
        if self.kind == FlowKind.PRESCRIBED and self.target_curvature is None:
            raise ValueError("prescribed flow requires target_curvature")
        return self

    @classmethod
    def from_settings(cls, settings: FlowSettings, **overrides) -> "FlowConfig":
        """Build a config from the flow settings section, with overrides"""
        values = settings.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def target_for(self, c: Complex) -> np.ndarray:
        """
        K̄ as an array of length m (zero unless prescribed, or classic with a target)

        Raises:
            DimensionMismatchError: If the target length is not m
        """
        if self.kind not in TARGETED_KINDS or self.target_curvature is None:
            return np.zeros(c.m)
        target = np.asarray(self.target_curvature, dtype=float)
        if target.shape != (c.m,):
            raise DimensionMismatchError(
                f"Target curvature has {target.size} entries, complex has {c.m} edge classes"
            )
        return target
