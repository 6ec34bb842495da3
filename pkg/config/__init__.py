"""
Configuration Module for CuspFlow
"""

from .settings import (
    Settings,
    get_settings,
    reset_settings,
    FlowSettings,
    SolverSettings,
    TraceSettings,
    RunSettings,
    LoggingSettings
)
from .logging_setup import configure_logging

__all__ = [
    "Settings",
    "get_settings",
    "reset_settings",
    "FlowSettings",
    "SolverSettings",
    "TraceSettings",
    "RunSettings",
    "LoggingSettings",
    "configure_logging"
]
