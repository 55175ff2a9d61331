# subkit/services/srt_processor.py

from decimal import Decimal, ROUND_HALF_UP
from typing import List, Optional, Sequence, Tuple
import logging
import re
from pydantic import ValidationError
from subkit.core.exceptions import FormatError
from subkit.core.files import UTF8_BOM
from subkit.models.corpus import SrtFile
from subkit.models.models import SubtitleBlock

logger = logging.getLogger(__name__)

TIMESTAMP_LINE = re.compile(
    r"^(\d{2,}):(\d{2}):(\d{2}),(\d{3}) --> (\d{2,}):(\d{2}):(\d{2}),(\d{3})$"
)
MILLISECOND = Decimal("0.001")


def to_milliseconds(seconds: float) -> int:
    """Round seconds to whole milliseconds, ties away from zero."""
    value = Decimal(repr(float(seconds))).quantize(MILLISECOND, rounding=ROUND_HALF_UP)
    return int(value * 1000)


def from_milliseconds(milliseconds: int) -> float:
    return milliseconds / 1000


def format_timestamp(seconds: float) -> str:
    """Render seconds as HH:MM:SS,mmm."""
    total = to_milliseconds(seconds)
    if total < 0:
        raise FormatError(f"negative time {seconds}")
    hours, rest = divmod(total, 3_600_000)
    minutes, rest = divmod(rest, 60_000)
    secs, millis = divmod(rest, 1000)
    return f"{hours:02d}:{minutes:02d}:{secs:02d},{millis:03d}"


def _milliseconds(hours: str, minutes: str, seconds: str, millis: str) -> int:
    if int(minutes) >= 60 or int(seconds) >= 60:
        raise ValueError("minutes and seconds must be below 60")
    return ((int(hours) * 60 + int(minutes)) * 60 + int(seconds)) * 1000 + int(millis)


class SrtProcessor:
    """Parses and emits SubRip subtitle files."""

    def emit_srt(self, blocks: Sequence[SubtitleBlock]) -> str:
        """
        Render blocks as SRT text with one blank line between blocks.

        Args:
            blocks: Consecutively indexed blocks in time order

        Returns:
            SRT text ending in a newline

        Raises:
            FormatError: If times are negative or reversed, or indices skip
        """
        rendered: List[str] = []
        previous: Optional[SubtitleBlock] = None
        for block in blocks:
            start_ms = to_milliseconds(block.start)
            end_ms = to_milliseconds(block.end)
            if start_ms < 0 or end_ms < 0:
                raise FormatError("negative time", block=block.index)
            if end_ms <= start_ms:
                raise FormatError(
                    f"end {format_timestamp(block.end)} is not after start {format_timestamp(block.start)}",
                    block=block.index
                )
            if previous is not None:
                if block.index != previous.index + 1:
                    raise FormatError(
                        f"index {block.index} does not follow {previous.index}",
                        block=block.index
                    )
                if start_ms < to_milliseconds(previous.start):
                    raise FormatError("start time earlier than previous block", block=block.index)
            rendered.append(
                f"{block.index}\n"
                f"{format_timestamp(block.start)} --> {format_timestamp(block.end)}\n"
                + "".join(f"{line}\n" for line in block.lines)
            )
            previous = block
        return "\n".join(rendered)

    def parse_srt(self, text: str, strict: bool = True, source: Optional[str] = None) -> SrtFile:
        """Parse SRT text; tolerates CRLF line endings and a UTF-8 BOM.

        Strict mode rejects non-consecutive indices and overlapping
        blocks; lenient mode records them as warnings.

        Args:
            text: SRT file content
            strict: Reject index gaps and overlaps instead of warning
            source: File name used in error messages

        Returns:
            SrtFile with the blocks in file order

        Raises:
            FormatError: If a block is malformed; names the line
        """
        if text.startswith(UTF8_BOM):
            text = text[1:]
        text = text.replace("\r\n", "\n").replace("\r", "\n")
        blocks: List[SubtitleBlock] = []
        warnings: List[str] = []
        if not text.strip():
            return SrtFile(blocks=blocks, warnings=warnings)

        try:
            for first_line, lines in self._group_lines(text):
                block = self._parse_block(lines, first_line)
                if blocks:
                    previous = blocks[-1]
                    if block.index != previous.index + 1:
                        message = f"index {block.index} does not follow {previous.index}"
                        if strict:
                            raise FormatError(message, line=first_line, block=block.index)
                        warnings.append(f"block {block.index}: {message}")
                    if to_milliseconds(block.start) < to_milliseconds(previous.end):
                        message = "overlaps previous block"
                        if strict:
                            raise FormatError(message, line=first_line, block=block.index)
                        warnings.append(f"block {block.index}: {message}")
                blocks.append(block)
        except FormatError as e:
            logger.error(f"Error parsing SRT: {e}")
            raise e.with_source(source) if source else e

        for warning in warnings:
            logger.warning(f"{source or 'srt'}: {warning}")
        logger.info(f"Parsed {len(blocks)} SRT blocks")
        return SrtFile(blocks=blocks, warnings=warnings)

    def _group_lines(self, text: str) -> List[Tuple[int, List[str]]]:
        """Blank-line separated groups with the line number of their first line."""
        groups: List[Tuple[int, List[str]]] = []
        current: List[str] = []
        first_line = 0
        for number, line in enumerate(text.split("\n"), 1):
            if not line.strip():
                if current:
                    groups.append((first_line, current))
                    current = []
                continue
            if not current:
                first_line = number
            current.append(line)
        if current:
            groups.append((first_line, current))
        return groups

    def _parse_block(self, lines: List[str], first_line: int) -> SubtitleBlock:
        if len(lines) < 3:
            raise FormatError("incomplete block (index, timestamp and text required)", line=first_line)

        index_text = lines[0].strip()
        if not index_text.isdigit():
            raise FormatError(f"invalid block index {lines[0]!r}", line=first_line)
        index = int(index_text)

        match = TIMESTAMP_LINE.match(lines[1].strip())
        if not match:
            raise FormatError(f"malformed timestamp {lines[1]!r}", line=first_line + 1, block=index)
        try:
            start_ms = _milliseconds(*match.group(1, 2, 3, 4))
            end_ms = _milliseconds(*match.group(5, 6, 7, 8))
        except ValueError as e:
            raise FormatError(f"malformed timestamp {lines[1]!r}: {e}", line=first_line + 1, block=index)

        try:
            return SubtitleBlock(
                index=index,
                start=from_milliseconds(start_ms),
                end=from_milliseconds(end_ms),
                lines=tuple(lines[2:])
            )
        except ValidationError as e:
            raise FormatError(f"invalid block: {e.errors()[0]['msg']}", line=first_line, block=index)


# Create singleton instance
srt_processor = SrtProcessor()
