# sepevo/log.py

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from sepevo.config import LOG_LEVEL

ROOT_LOGGER = "sepevo"


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """Attach a rich handler to the package logger. Safe to call repeatedly."""
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel((level or LOG_LEVEL).upper())
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
        logger.propagate = False
    return logger
