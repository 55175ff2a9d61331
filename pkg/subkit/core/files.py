# subkit/core/files.py

import logging
import os
import tempfile
from pathlib import Path
from typing import Union

from subkit.core.exceptions import FormatError

logger = logging.getLogger(__name__)

UTF8_BOM = "\ufeff"


def read_text(path: Union[str, Path]) -> str:
    """Read a UTF-8 input file, dropping a leading byte order mark."""
    path = Path(path)
    if not path.exists():
        logger.error(f"Input file not found: {path}")
        raise FormatError("file not found", source=str(path))
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        logger.error(f"Input file is not UTF-8: {path}: {e}")
        raise FormatError(f"not valid UTF-8 ({e.reason} at byte {e.start})", source=str(path))
    return text[1:] if text.startswith(UTF8_BOM) else text


def write_atomic(path: Union[str, Path], text: str) -> Path:
    """Write text through a temp file in the target directory and rename it."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except Exception as e:
        logger.error(f"Failed to write {path}: {e}")
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
    logger.debug(f"Wrote {len(text)} characters to {path}")
    return path
