"""
Logging Setup
Console + file logging for command-line runs
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

import pytz

from .settings import LOG_LEVEL, TIMEZONE, LOG_FILE_NAME

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def configure_logging(output_dir: Optional[Path] = None, level: str = LOG_LEVEL) -> None:
    """
    Configure root logging once per process

    Args:
        output_dir: If given, also log to run.log inside this directory
        level: Logging level name
    """
    handlers = [logging.StreamHandler(sys.stderr)]
    if output_dir is not None:
        Path(output_dir).mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(Path(output_dir) / LOG_FILE_NAME))

    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def now_local() -> datetime:
    """Current wall-clock time in the configured timezone"""
    try:
        tz = pytz.timezone(TIMEZONE)
    except pytz.UnknownTimeZoneError:
        tz = pytz.utc
    return datetime.now(tz)


def log_banner(logger: logging.Logger, title: str) -> None:
    """Log the title and the local start time between two rules of `=`"""
    logger.info("=" * 80)
    logger.info(title)
    logger.info(f"Time: {now_local().strftime('%Y-%m-%d %H:%M:%S %Z')}")
    logger.info("=" * 80)
