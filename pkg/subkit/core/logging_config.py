# subkit/core/logging_config.py

import logging
import sys
from pythonjsonlogger import jsonlogger

TEXT_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
JSON_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


def setup_logging(level: str = "INFO", fmt: str = "text") -> logging.Handler:
    """Route all toolkit logging to stderr.

    stdout is reserved for machine-readable command output, so the root
    logger gets exactly one stderr handler, replacing earlier ones.
    """
    handler = logging.StreamHandler(sys.stderr)
    if fmt == "json":
        handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level.upper())
    logging.getLogger(__name__).debug(f"Logging configured: level={level}, format={fmt}")
    return handler
