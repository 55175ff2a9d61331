# subkit/core/exceptions.py

from typing import Optional


class SubkitError(Exception):
    """Base class for every error the toolkit raises on purpose.

    Each subclass carries the process exit code the CLI reports for it,
    so commands can map failures without inspecting messages.
    """

    exit_code: int = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class FormatError(SubkitError, ValueError):
    """Input text does not follow one of the supported file formats."""

    exit_code = 2

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        source: Optional[str] = None,
        block: Optional[int] = None
    ):
        self.detail = message
        self.line = line
        self.source = source
        self.block = block
        location = []
        if source:
            location.append(str(source))
        if line is not None:
            location.append(f"line {line}")
        if block is not None:
            location.append(f"block {block}")
        prefix = ", ".join(location)
        super().__init__(f"{prefix}: {message}" if prefix else message)

    def with_source(self, source: str) -> "FormatError":
        """Return a copy of this error that names the file it came from."""
        return FormatError(self.detail, line=self.line, source=source, block=self.block)


class StructureError(SubkitError, ValueError):
    """Block/line structure cannot be turned into an annotated sentence."""

    exit_code = 2


class CorpusMismatchError(SubkitError):
    """Hypothesis and reference corpora cannot be paired."""

    exit_code = 3


class AlignmentError(SubkitError):
    """Tokens of a sentence cannot be mapped onto its timed words."""

    exit_code = 3


class MetricError(SubkitError, ValueError):
    """A metric is undefined for the given input."""

    exit_code = 3


class ProsodyError(SubkitError):
    """Not enough pause data to derive a statistic."""

    exit_code = 3


class TimingError(SubkitError, ValueError):
    """Subtitle in/out times cannot be assigned."""

    exit_code = 3


class SegmentationError(SubkitError, ValueError):
    """Segmenter input is unusable."""

    exit_code = 3


class UsageError(SubkitError):
    """Command line or configuration misuse."""

    exit_code = 64
