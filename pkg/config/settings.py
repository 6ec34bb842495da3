"""
Centralized Configuration for CuspFlow
Uses Pydantic for type-safe configuration management

All settings loaded from environment variables with validation;
command-line flags override them per invocation.
"""

import os
from typing import Optional, Literal
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class FlowSettings(BaseModel):
    """Defaults for the curvature flows"""
    step: float = Field(
        default=0.01,
        description="Runge-Kutta step size h"
    )
    adaptive: bool = Field(
        default=False,
        description="Use the embedded adaptive pair instead of fixed-step RK4"
    )
    adaptive_atol: float = Field(
        default=1e-10,
        description="Absolute tolerance of the adaptive pair"
    )
    t_max: float = Field(
        default=300.0,
        description="Integration horizon"
    )
    tol_converge: float = Field(
        default=1e-10,
        description="Sup-norm curvature threshold for a Converged verdict"
    )
    window: float = Field(
        default=10.0,
        description="Trailing time window used by the divergence test"
    )
    l_max: float = Field(
        default=1e3,
        description="Divergence radius on the sup-norm of the metric"
    )
    record_every: int = Field(
        default=10,
        description="Record one trace sample per this many accepted steps"
    )

    @field_validator("step", "adaptive_atol", "t_max", "tol_converge", "window", "l_max")
    @classmethod
    def positive(cls, v: float) -> float:
        """Reject non-positive numeric settings"""
        if not v > 0:
            raise ValueError("must be positive")
        return v

    @field_validator("record_every")
    @classmethod
    def positive_count(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v


class SolverSettings(BaseModel):
    """Defaults for the direct energy minimizer"""
    tol: float = Field(
        default=1e-10,
        description="Sup-norm curvature threshold for a Found verdict"
    )
    max_iter: int = Field(
        default=500,
        description="Maximum descent iterations"
    )
    armijo_c1: float = Field(
        default=1e-4,
        description="Sufficient-decrease constant of the backtracking line search"
    )
    l_max: float = Field(
        default=1e3,
        description="Iterate radius beyond which unbounded descent is suspected"
    )
    energy_drop: float = Field(
        default=1e3,
        description="Energy decrease past which unbounded descent is reported"
    )

    @field_validator("tol", "armijo_c1", "l_max", "energy_drop")
    @classmethod
    def positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("must be positive")
        return v


class TraceSettings(BaseModel):
    """Trace output configuration"""
    trace_dir: Optional[str] = Field(
        default=None,
        description="Default directory for trace files (optional)"
    )
    delimiter: str = Field(
        default=",",
        description="Field delimiter of trace files"
    )


class RunSettings(BaseModel):
    """Multi-start and reproducibility settings"""
    seed: int = Field(
        default=0,
        description="Base seed for perturbed initial metrics"
    )
    jobs: int = Field(
        default=1,
        description="Worker processes for multi-start sweeps"
    )


class LoggingSettings(BaseModel):
    """Logging configuration"""
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="WARNING",
        description="Logging level"
    )
    log_file: Optional[str] = Field(
        default=None,
        description="Log file path (optional)"
    )


class Settings(BaseSettings):
    """
    Main application settings

    Loads configuration from environment variables with validation
    """

    flow: FlowSettings = Field(default_factory=FlowSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    trace: TraceSettings = Field(default_factory=TraceSettings)
    run: RunSettings = Field(default_factory=RunSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="CUSPFLOW_",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )

    @classmethod
    def load_from_env(cls) -> "Settings":
        """
        Load settings from environment variables

        Returns:
            Settings instance with all configuration loaded
        """
        from dotenv import load_dotenv
        load_dotenv()

        return cls(
            flow=FlowSettings(
                step=float(os.getenv("CUSPFLOW_STEP", "0.01")),
                adaptive=os.getenv("CUSPFLOW_ADAPTIVE", "False").lower() == "true",
                adaptive_atol=float(os.getenv("CUSPFLOW_ADAPTIVE_ATOL", "1e-10")),
                t_max=float(os.getenv("CUSPFLOW_T_MAX", "300")),
                tol_converge=float(os.getenv("CUSPFLOW_TOL", "1e-10")),
                window=float(os.getenv("CUSPFLOW_WINDOW", "10")),
                l_max=float(os.getenv("CUSPFLOW_L_MAX", "1e3")),
                record_every=int(os.getenv("CUSPFLOW_RECORD_EVERY", "10"))
            ),
            solver=SolverSettings(
                tol=float(os.getenv("CUSPFLOW_SOLVER_TOL", "1e-10")),
                max_iter=int(os.getenv("CUSPFLOW_SOLVER_MAX_ITER", "500")),
                armijo_c1=float(os.getenv("CUSPFLOW_SOLVER_ARMIJO_C1", "1e-4")),
                l_max=float(os.getenv("CUSPFLOW_SOLVER_L_MAX", "1e3")),
                energy_drop=float(os.getenv("CUSPFLOW_SOLVER_ENERGY_DROP", "1e3"))
            ),
            trace=TraceSettings(
                trace_dir=os.getenv("CUSPFLOW_TRACE_DIR"),
                delimiter=os.getenv("CUSPFLOW_TRACE_DELIMITER", ",")
            ),
            run=RunSettings(
                seed=int(os.getenv("CUSPFLOW_SEED", "0")),
                jobs=int(os.getenv("CUSPFLOW_JOBS", "1"))
            ),
            logging=LoggingSettings(
                log_level=os.getenv("CUSPFLOW_LOG_LEVEL", "WARNING").upper(),
                log_file=os.getenv("CUSPFLOW_LOG_FILE")
            )
        )


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get global settings instance (singleton)

    Returns:
        Settings instance with all configuration
    """
    global _settings

    if _settings is None:
        _settings = Settings.load_from_env()

    return _settings


def reset_settings() -> None:
    """Drop the cached singleton (tests change the environment)"""
    global _settings
    _settings = None
