# subkit/services/conversion.py

from typing import List, Literal, Optional, Sequence
import logging
import re
from pydantic import BaseModel, Field, ValidationError
from subkit.core.exceptions import AlignmentError, CorpusMismatchError, FormatError, TimingError
from subkit.models.corpus import DurationTable, SrtFile, WordTimingFile
from subkit.models.models import AnnotatedSentence, Constraints, SubtitleBlock, UntimedBlock
from subkit.services.annotation import annotated_from_blocks, blocks_from_annotated
from subkit.services.corpus_parser import MARKUP_PATTERN
from subkit.services.segmenter import DEFAULT_MIN_GAP, assign_times, estimate_duration, join_timed_blocks
from subkit.services.srt_processor import from_milliseconds, to_milliseconds
from subkit.services.timing_parser import content_lines, parse_seconds

logger = logging.getLogger(__name__)

Grouping = Literal["sentence", "block"]
TimingMode = Literal["sidecar", "alignment", "durations", "reading-speed"]

# A block closes a sentence when its last line ends like one, closing quotes allowed
SENTENCE_END = re.compile(r"[.!?…][\"”»')\]]*$")


class BlockTiming(BaseModel):
    """One row of the block-timing sidecar: where an SRT block sat in time."""

    index: int = Field(..., ge=1)
    start: float = Field(..., ge=0.0)
    end: float


class TimedCorpus(BaseModel):
    """Subtitle blocks of a whole corpus and how they were timed."""

    blocks: List[SubtitleBlock]
    mode: TimingMode
    warnings: List[str] = Field(default_factory=list)


class ConversionService:
    """Moves subtitles between annotated text and timed SRT blocks."""

    def srt_to_annotated(self, srt: SrtFile, group: Grouping = "sentence") -> List[AnnotatedSentence]:
        """Rebuild annotated sentences from SRT blocks, dropping the timings.

        "sentence" grouping closes a sentence at a block whose last line
        ends in sentence-final punctuation; "block" makes every block a
        sentence of its own.

        Args:
            srt: Parsed SRT file
            group: "sentence" or "block"

        Returns:
            List[AnnotatedSentence]: One sentence per group of blocks

        Raises:
            FormatError: If a block holds a standalone markup token such as
                `<i>` or a literal `<eob>`, which annotated text cannot carry
        """
        sentences: List[AnnotatedSentence] = []
        pending: List[UntimedBlock] = []
        for block in srt.blocks:
            lines = [line.split() for line in block.lines]
            for token in (token for line in lines for token in line):
                if MARKUP_PATTERN.match(token):
                    raise FormatError(
                        f"markup token {token} has no annotated-text form; remove it from the SRT first",
                        block=block.index
                    )
            pending.append(lines)
            if group == "block" or SENTENCE_END.search(block.lines[-1].rstrip()):
                sentences.append(self._sentence(pending, block.index))
                pending = []
        if pending:
            sentences.append(self._sentence(pending, srt.blocks[-1].index))
        logger.info(f"Grouped {len(srt.blocks)} SRT blocks into {len(sentences)} sentences")
        return sentences

    def _sentence(self, blocks: Sequence[UntimedBlock], last_index: int) -> AnnotatedSentence:
        try:
            return annotated_from_blocks(blocks)
        except ValidationError as e:
            logger.error(f"Error building a sentence from SRT block {last_index}: {e}")
            raise FormatError(f"invalid subtitle text: {e.errors()[0]['msg']}", block=last_index)

    def emit_block_timings(self, blocks: Sequence[SubtitleBlock]) -> str:
        """Render the block-timing sidecar (index, start, end in seconds)."""
        lines = ["#index\tstart\tend"]
        for block in blocks:
            lines.append(
                f"{block.index}\t{to_milliseconds(block.start) / 1000:.3f}\t{to_milliseconds(block.end) / 1000:.3f}"
            )
        return "\n".join(lines) + "\n"

    def parse_block_timings(self, text: str, source: Optional[str] = None) -> List[BlockTiming]:
        rows: List[BlockTiming] = []
        try:
            for number, line in content_lines(text):
                fields = line.split("\t")
                if len(fields) != 3 or not fields[0].strip().isdigit():
                    raise FormatError("expected index<TAB>start<TAB>end", line=number)
                start = parse_seconds(fields[1], "start time", number)
                end = parse_seconds(fields[2], "end time", number)
                if end <= start or start < 0:
                    raise FormatError(f"invalid block interval {start}-{end}", line=number)
                rows.append(BlockTiming(index=int(fields[0]), start=start, end=end))
        except FormatError as e:
            logger.error(f"Error parsing block timings: {e}")
            raise e.with_source(source) if source else e
        return rows

    def _from_sidecar(self, sentences: Sequence[AnnotatedSentence], rows: Sequence[BlockTiming]) -> List[SubtitleBlock]:
        untimed = [block for sentence in sentences for block in blocks_from_annotated(sentence)]
        if len(untimed) != len(rows):
            raise CorpusMismatchError(f"Corpus has {len(untimed)} blocks but the block timings list {len(rows)}")
        return [
            SubtitleBlock(
                index=row.index,
                start=row.start,
                end=row.end,
                lines=tuple(" ".join(line) for line in block)
            )
            for block, row in zip(untimed, rows)
        ]

    def time_corpus(
        self,
        sentences: Sequence[AnnotatedSentence],
        constraints: Constraints,
        timings: Optional[WordTimingFile] = None,
        durations: Optional[DurationTable] = None,
        sidecar: Optional[Sequence[BlockTiming]] = None,
        start_index: int = 1,
        min_gap: float = DEFAULT_MIN_GAP,
        strict: bool = True
    ) -> TimedCorpus:
        """Time every block of a corpus.

        Sources in order of preference: block-timing sidecar, word
        timings, sentence durations, reading-speed estimate. Proportional
        timing lays sentences end to end, min_gap apart.
        """
        if sidecar is not None:
            return TimedCorpus(blocks=self._from_sidecar(sentences, sidecar), mode="sidecar")

        warnings: List[str] = []
        groups: List[List[SubtitleBlock]] = []
        offset = 0.0
        mode: TimingMode = "alignment" if timings is not None else (
            "durations" if durations is not None else "reading-speed"
        )
        for sentence_id, sentence in enumerate(sentences):
            blocks = blocks_from_annotated(sentence)
            timed: Optional[List[SubtitleBlock]] = None
            if timings is not None:
                try:
                    timed = assign_times(blocks, words=timings.for_sentence(sentence_id), min_gap=min_gap)
                except AlignmentError as e:
                    if strict:
                        raise AlignmentError(f"sentence {sentence_id}: {e}")
                    warnings.append(f"sentence {sentence_id}: {e}; timed by reading speed")
                    logger.warning(warnings[-1])
            if timed is None:
                if durations is not None and timings is None:
                    if sentence_id not in durations:
                        raise TimingError(f"No duration for sentence {sentence_id}")
                    total = durations[sentence_id]
                else:
                    total = estimate_duration(sentence, constraints.max_chars_per_second)
                timed = assign_times(blocks, total=total, offset=offset, min_gap=min_gap)
            groups.append(timed)
            offset = from_milliseconds(to_milliseconds(timed[-1].end)) + min_gap

        blocks = join_timed_blocks(groups, start_index=start_index, min_gap=min_gap)
        logger.info(f"Timed {len(blocks)} blocks of {len(sentences)} sentences ({mode})")
        return TimedCorpus(blocks=blocks, mode=mode, warnings=warnings)


# Create singleton instance
conversion_service = ConversionService()
