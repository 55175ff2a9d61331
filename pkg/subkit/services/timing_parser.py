# subkit/services/timing_parser.py

from typing import Dict, List, Optional, Tuple
import logging
import math
from subkit.core.exceptions import FormatError
from subkit.core.files import UTF8_BOM
from subkit.models.corpus import DurationTable, WordTimingFile
from subkit.models.models import SentenceDuration, TimedWord

logger = logging.getLogger(__name__)


def content_lines(text: str) -> List[Tuple[int, str]]:
    """Numbered lines that are neither blank nor `#` comments."""
    if text.startswith(UTF8_BOM):
        text = text[1:]
    lines = []
    for number, line in enumerate(text.replace("\r\n", "\n").split("\n"), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((number, line.rstrip("\r")))
    return lines


def parse_sentence_id(value: str, line: int) -> int:
    value = value.strip()
    if not value.isdigit():
        raise FormatError(f"invalid sentence id {value!r}", line=line)
    return int(value)


def parse_seconds(value: str, field: str, line: int) -> float:
    try:
        seconds = float(value)
    except ValueError:
        raise FormatError(f"non-numeric {field} {value!r}", line=line)
    if not math.isfinite(seconds):
        raise FormatError(f"non-finite {field} {value!r}", line=line)
    return seconds


class TimingParser:
    """Reads forced-alignment word timings and per-sentence durations."""

    def parse_word_timings(self, text: str, source: Optional[str] = None) -> WordTimingFile:
        """Parse `sentence_id<TAB>word<TAB>start<TAB>end` records.

        Records of one sentence need not be contiguous, but their start
        times must not decrease in file order.

        Args:
            text: TSV content; blank lines and `#` comments are skipped
            source: File name used in error messages

        Returns:
            WordTimingFile grouped by sentence id

        Raises:
            FormatError: If a record is malformed or out of order
        """
        try:
            rows = []
            for number, line in content_lines(text):
                fields = line.split("\t")
                if len(fields) != 4:
                    raise FormatError(f"expected 4 tab-separated fields, got {len(fields)}", line=number)
                sentence_id = parse_sentence_id(fields[0], number)
                word = fields[1].strip()
                if not word:
                    raise FormatError("empty word", line=number)
                start = parse_seconds(fields[2], "start time", number)
                end = parse_seconds(fields[3], "end time", number)
                rows.append((number, sentence_id, word, start, end))
            return self._group(rows, warnings=[])
        except FormatError as e:
            logger.error(f"Error parsing word timings: {e}")
            raise e.with_source(source) if source else e

    def parse_ctm(self, text: str, source: Optional[str] = None) -> WordTimingFile:
        """Parse CTM lines `utterance channel start duration word [confidence]`.

        Integer utterance ids are used as sentence ids; otherwise
        utterances are numbered in order of first appearance.
        """
        try:
            raw = []
            for number, line in content_lines(text):
                fields = line.split()
                if len(fields) not in (5, 6):
                    raise FormatError(f"expected 5 or 6 CTM fields, got {len(fields)}", line=number)
                start = parse_seconds(fields[2], "start time", number)
                duration = parse_seconds(fields[3], "duration", number)
                if duration < 0:
                    raise FormatError(f"negative duration {fields[3]}", line=number)
                raw.append((number, fields[0], fields[4], start, start + duration))

            numeric = all(utterance.isdigit() for _, utterance, _, _, _ in raw)
            ids: Dict[str, int] = {}
            rows = []
            for number, utterance, word, start, end in raw:
                if numeric:
                    sentence_id = int(utterance)
                else:
                    sentence_id = ids.setdefault(utterance, len(ids))
                rows.append((number, sentence_id, word, start, end))
            warnings = []
            if raw and not numeric:
                warnings.append(f"numbered {len(ids)} CTM utterances in order of appearance")
            return self._group(rows, warnings=warnings)
        except FormatError as e:
            logger.error(f"Error parsing CTM: {e}")
            raise e.with_source(source) if source else e

    def _group(self, rows, warnings: List[str]) -> WordTimingFile:
        words: Dict[int, List[TimedWord]] = {}
        for number, sentence_id, word, start, end in rows:
            if start < 0:
                raise FormatError(f"negative start time {start}", line=number)
            if end < start:
                raise FormatError(f"end time {end} before start time {start}", line=number)
            sentence_words = words.setdefault(sentence_id, [])
            if sentence_words and start < sentence_words[-1].start_time:
                raise FormatError(
                    f"start time {start} earlier than previous word of sentence {sentence_id}",
                    line=number
                )
            sentence_words.append(TimedWord(surface=word, start_time=start, end_time=end))

        for warning in warnings:
            logger.warning(warning)
        logger.info(f"Parsed {len(rows)} timed words for {len(words)} sentences")
        return WordTimingFile(words=words, warnings=warnings)

    def parse_durations(self, text: str, source: Optional[str] = None) -> DurationTable:
        """
        Parse `sentence_id<TAB>duration_seconds` lines.

        Args:
            text: TSV content
            source: File name used in error messages

        Returns:
            DurationTable keyed by 0-based sentence id

        Raises:
            FormatError: If a duration is missing, non-positive or repeated
        """
        durations: Dict[int, SentenceDuration] = {}
        try:
            for number, line in content_lines(text):
                fields = line.split("\t")
                if len(fields) != 2:
                    raise FormatError(f"expected 2 tab-separated fields, got {len(fields)}", line=number)
                sentence_id = parse_sentence_id(fields[0], number)
                duration = parse_seconds(fields[1], "duration", number)
                if sentence_id in durations:
                    raise FormatError(f"duplicate sentence id {sentence_id}", line=number)
                if duration <= 0:
                    raise FormatError(f"non-positive duration {fields[1].strip()}", line=number)
                durations[sentence_id] = SentenceDuration(duration=duration)
        except FormatError as e:
            logger.error(f"Error parsing durations: {e}")
            raise e.with_source(source) if source else e

        logger.info(f"Parsed durations for {len(durations)} sentences")
        return DurationTable(durations=durations, source="durations")

    def durations_from_timings(self, timings: WordTimingFile) -> DurationTable:
        """Sentence duration = end of its last word − start of its first word."""
        durations: Dict[int, SentenceDuration] = {}
        warnings: List[str] = []
        for sentence_id, words in sorted(timings.words.items()):
            if not words:
                continue
            span = max(word.end_time for word in words) - words[0].start_time
            if span <= 0:
                warnings.append(f"sentence {sentence_id}: timed words span no time, no duration derived")
                continue
            durations[sentence_id] = SentenceDuration(duration=span)

        for warning in warnings:
            logger.warning(warning)
        logger.debug(f"Derived {len(durations)} durations from word timings")
        return DurationTable(durations=durations, source="timings", warnings=warnings)


# Create singleton instance
timing_parser = TimingParser()
