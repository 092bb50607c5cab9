"""
Logging configuration for the modkernel entry point

stderr gets coloured records, the log file gets plain ones; stdout stays
reserved for result envelopes.
"""
import sys
from pathlib import Path
from typing import Optional
import logging

import colorlog

APP_LOGGER = "modkernel"
CONSOLE_FORMAT = "%(log_color)s%(asctime)s [%(levelname)s]%(reset)s %(message)s"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_logging(level: str = "INFO", log_dir: Optional[Path] = None) -> logging.Logger:
    """Install stderr and (optionally) file handlers on the root logger"""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    root.setLevel(level.upper())

    console = colorlog.StreamHandler(sys.stderr)
    console.setFormatter(colorlog.ColoredFormatter(CONSOLE_FORMAT))
    root.addHandler(console)

    if log_dir is not None:
        try:
            log_dir.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_dir / f"{APP_LOGGER}.log")
            file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
            root.addHandler(file_handler)
        except OSError as e:
            root.warning(f"Log file disabled, cannot write to {log_dir}: {e}")

    logger = logging.getLogger(APP_LOGGER)
    logger.debug(f"Logging configured at {level.upper()}")
    return logger
