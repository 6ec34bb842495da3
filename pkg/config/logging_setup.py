"""
Logging setup shared by the command-line entry points
"""

import logging
from typing import Optional

from .settings import LoggingSettings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(settings: LoggingSettings, level: Optional[str] = None) -> None:
    """
    Configure root logging to standard error (and optionally a file)

    Args:
        settings: Logging section of the application settings
        level: Explicit level overriding the configured one
    """
    handlers = [logging.StreamHandler()]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file, encoding="utf-8"))

    logging.basicConfig(
        level=getattr(logging, (level or settings.log_level).upper()),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True
    )
