"""
Command-line front end
"""

from .report import ComplexSummary, RunReport
from .main import build_parser, main

__all__ = [
    "ComplexSummary",
    "RunReport",
    "build_parser",
    "main"
]
