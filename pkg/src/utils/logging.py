"""
Logging setup for the command line.

Library modules use ``from loguru import logger`` directly and never add sinks.
"""
import sys

from loguru import logger


def configure_logging(level: str = "INFO") -> None:
    """Replace loguru's default sink with one stderr sink at ``level``."""
    logger.remove()
    logger.add(
        sys.stderr,
        level=level.upper(),
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | {name}:{line} - {message}",
    )
