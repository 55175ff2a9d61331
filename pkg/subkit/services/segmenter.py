# subkit/services/segmenter.py

from itertools import accumulate, combinations
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union
import logging
import numpy as np
from subkit.core.exceptions import SegmentationError, TimingError
from subkit.models.models import (
    AnnotatedSentence,
    BreakSymbol,
    Constraints,
    SentenceDuration,
    SubtitleBlock,
    TimedWord,
    UntimedBlock
)
from subkit.models.segmentation import SegmentationCost, SegmentationResult
from subkit.services.annotation import annotated_from_blocks, char_count, line_text
from subkit.services.prosody import align_tokens, is_lexical
from subkit.services.srt_processor import from_milliseconds, to_milliseconds

logger = logging.getLogger(__name__)

Label = Optional[BreakSymbol]
Strategy = Literal["dp", "alternating"]

DEFAULT_MIN_GAP = 0.024


class SegmentationProblem:
    """Tokens, limits, pauses and weights of one sentence to segment.

    Gap g sits between token g and token g + 1. Costs are kept here so
    the dynamic program and the from-scratch scorer share one definition.
    """

    def __init__(
        self,
        tokens: Sequence[str],
        constraints: Constraints,
        pauses: Optional[Sequence[float]] = None,
        cost: Optional[SegmentationCost] = None
    ):
        if not tokens:
            raise SegmentationError("Cannot segment an empty token sequence")
        if pauses is not None and len(pauses) != len(tokens) - 1:
            raise SegmentationError(
                f"Expected {len(tokens) - 1} pauses for {len(tokens)} tokens, got {len(pauses)}"
            )
        self.tokens = list(tokens)
        self.constraints = constraints
        self.cost = cost or SegmentationCost()
        self.pauses = list(pauses) if pauses is not None else [0.0] * (len(tokens) - 1)
        self.widths = [0] + list(accumulate(len(token) for token in self.tokens))
        self.function_words = frozenset(self.cost.function_words)
        self.lexical = [is_lexical(token) for token in self.tokens]

    @property
    def size(self) -> int:
        return len(self.tokens)

    def line_length(self, start: int, end: int) -> int:
        """Characters of tokens[start:end] joined by single spaces."""
        return self.widths[end] - self.widths[start] + (end - start - 1)

    def line_fits(self, start: int, end: int) -> bool:
        return self.line_length(start, end) <= self.constraints.max_chars_per_line

    def line_feasible(self, start: int, end: int) -> bool:
        """A line fits, or is one token too long for any line."""
        return end - start == 1 or self.line_fits(start, end)

    def forced(self, gap: int) -> bool:
        return self.cost.hard_pause_breaks and self.pauses[gap] > self.constraints.eob_pause_threshold

    def gap_cost(self, gap: int, label: Label) -> float:
        weights = self.cost
        pause = self.pauses[gap]
        threshold = self.constraints.eob_pause_threshold
        total = 0.0
        if label is not None:
            total += weights.w_break_density
            if self.tokens[gap].lower() in self.function_words:
                total += weights.w_function_word
            if not self.lexical[gap + 1]:
                total += weights.w_leading_punctuation
        if label is BreakSymbol.BLOCK:
            total += weights.w_block_break
        elif not weights.hard_pause_breaks and pause > threshold:
            total += weights.w_pause_miss
        if label is BreakSymbol.LINE and weights.eol_pause_min <= pause <= threshold:
            total -= weights.eol_pause_bonus
        return total

    def lines_cost(self, bounds: Sequence[Tuple[int, int]]) -> float:
        """Short-line and balance cost of the lines of one block."""
        weights = self.cost
        lengths = [self.line_length(start, end) for start, end in bounds]
        total = weights.w_short_line * sum(1 for length in lengths if length < weights.min_line_chars)
        total += weights.w_balance * sum(abs(a - b) for a, b in zip(lengths, lengths[1:]))
        return total


def _line_bounds(start: int, end: int, splits: Sequence[int]) -> List[Tuple[int, int]]:
    edges = [start, *splits, end]
    return list(zip(edges, edges[1:]))


def _best_block(problem: SegmentationProblem, start: int, end: int):
    """Cheapest split of tokens[start:end] into at most max_lines lines.

    Returns (cost, line bounds) or None when no split is feasible.
    Candidates are compared by cost, then line count, then split points.
    """
    best = None
    for line_count in range(1, problem.constraints.max_lines_per_block + 1):
        if line_count > end - start:
            break
        for splits in combinations(range(start + 1, end), line_count - 1):
            bounds = _line_bounds(start, end, splits)
            if not all(problem.line_feasible(a, b) for a, b in bounds):
                continue
            cost = problem.lines_cost(bounds)
            cost += sum(problem.gap_cost(split - 1, BreakSymbol.LINE) for split in splits)
            for a, b in bounds:
                cost += sum(problem.gap_cost(gap, None) for gap in range(a, b - 1))
            key = (round(cost, 9), line_count - 1, tuple(splits))
            if best is None or key < best[0]:
                best = (key, cost, bounds)
    if best is None:
        return None
    return best[1], best[2]


def _solve(problem: SegmentationProblem) -> List[List[Tuple[int, int]]]:
    """Suffix dynamic program over block boundaries.

    best[i] holds the preferred segmentation of tokens[i:] keyed by
    (cost, breaks, block-break positions, line-break positions).
    """
    n = problem.size
    best: Dict[int, tuple] = {n: ((0.0, 0, (), ()), 0.0, [])}
    for start in range(n - 1, -1, -1):
        choice = None
        for end in range(start + 1, n + 1):
            if end - 1 > start and problem.forced(end - 2):
                break
            block = _best_block(problem, start, end)
            if block is None:
                break
            block_cost, bounds = block
            rest_key, rest_cost, rest_blocks = best[end]
            cost = block_cost + rest_cost
            eols = tuple(b - 1 for _, b in bounds[:-1])
            eobs: Tuple[int, ...] = ()
            if end < n:
                cost += problem.gap_cost(end - 1, BreakSymbol.BLOCK)
                eobs = (end - 1,)
            key = (
                round(cost, 9),
                len(eols) + len(eobs) + rest_key[1],
                eobs + rest_key[2],
                eols + rest_key[3]
            )
            if choice is None or key < choice[0]:
                choice = (key, cost, [bounds] + rest_blocks)
        best[start] = choice
    return best[0][2]


def _to_blocks(problem: SegmentationProblem, layout: Sequence[Sequence[Tuple[int, int]]]) -> List[UntimedBlock]:
    return [[problem.tokens[a:b] for a, b in bounds] for bounds in layout]


def _layout_from_labels(size: int, labels: Sequence[Label]) -> List[List[Tuple[int, int]]]:
    layout: List[List[Tuple[int, int]]] = []
    block: List[Tuple[int, int]] = []
    line_start = 0
    for gap, label in enumerate(labels):
        if label is None:
            continue
        block.append((line_start, gap + 1))
        line_start = gap + 1
        if label is BreakSymbol.BLOCK:
            layout.append(block)
            block = []
    block.append((line_start, size))
    layout.append(block)
    return layout


def score_segmentation(
    tokens: Sequence[str],
    labels: Sequence[Label],
    constraints: Optional[Constraints] = None,
    pauses: Optional[Sequence[float]] = None,
    cost: Optional[SegmentationCost] = None
) -> Optional[float]:
    """Cost of a complete labeling of the token gaps, or None if infeasible.

    `labels` has one entry per gap: None, `<eol>` or `<eob>`; the final
    `<eob>` is implied.
    """
    problem = SegmentationProblem(tokens, constraints or Constraints(), pauses, cost)
    if len(labels) != problem.size - 1:
        raise SegmentationError(f"Expected {problem.size - 1} labels, got {len(labels)}")
    for gap, label in enumerate(labels):
        if problem.forced(gap) and label is not BreakSymbol.BLOCK:
            return None

    total = sum(problem.gap_cost(gap, label) for gap, label in enumerate(labels))
    for bounds in _layout_from_labels(problem.size, labels):
        if len(bounds) > problem.constraints.max_lines_per_block:
            return None
        if not all(problem.line_feasible(a, b) for a, b in bounds):
            return None
        total += problem.lines_cost(bounds)
    return total


def _alternating_layout(problem: SegmentationProblem) -> List[List[Tuple[int, int]]]:
    """Fill each line greedily; close a block once it holds max_lines lines."""
    layout: List[List[Tuple[int, int]]] = []
    block: List[Tuple[int, int]] = []
    line_start = 0
    for index in range(1, problem.size + 1):
        at_end = index == problem.size
        if not at_end and problem.line_fits(line_start, index + 1) and not problem.forced(index - 1):
            continue
        block.append((line_start, index))
        line_start = index
        if at_end or len(block) == problem.constraints.max_lines_per_block or problem.forced(index - 1):
            layout.append(block)
            block = []
    return layout


def segment_with_report(
    tokens: Sequence[str],
    constraints: Optional[Constraints] = None,
    pauses: Optional[Sequence[float]] = None,
    cost: Optional[SegmentationCost] = None,
    strategy: Strategy = "dp"
) -> SegmentationResult:
    """Segment tokens and report the cost, forced block breaks and
    over-long blocks (0-based) of the result.

    Args:
        tokens: Plain tokens of one sentence
        constraints: Line, block and pause limits
        pauses: Pause after each token, one per gap
        cost: Segmentation weights
        strategy: "dp" or the "alternating" baseline

    Returns:
        SegmentationResult: Annotated sentence with its cost report

    Raises:
        SegmentationError: If the strategy is unknown
    """
    problem = SegmentationProblem(tokens, constraints or Constraints(), pauses, cost)
    if strategy == "dp":
        layout = _solve(problem)
    elif strategy == "alternating":
        layout = _alternating_layout(problem)
    else:
        raise SegmentationError(f"Unknown segmentation strategy: {strategy}")

    labels: List[Label] = [None] * (problem.size - 1)
    for block_number, bounds in enumerate(layout):
        for _, end in bounds[:-1]:
            labels[end - 1] = BreakSymbol.LINE
        if block_number < len(layout) - 1:
            labels[bounds[-1][1] - 1] = BreakSymbol.BLOCK

    overlong = [
        block_number
        for block_number, bounds in enumerate(layout)
        if not all(problem.line_fits(a, b) for a, b in bounds)
    ]
    if overlong:
        logger.warning(f"Blocks {overlong} hold a token longer than {problem.constraints.max_chars_per_line} characters")

    total = sum(problem.gap_cost(gap, label) for gap, label in enumerate(labels))
    total += sum(problem.lines_cost(bounds) for bounds in layout)
    sentence = annotated_from_blocks(_to_blocks(problem, layout))
    return SegmentationResult(
        sentence=sentence,
        cost=total,
        forced_eobs=sum(1 for gap in range(problem.size - 1) if problem.forced(gap)),
        overlong_blocks=overlong
    )


def segment(
    tokens: Sequence[str],
    constraints: Optional[Constraints] = None,
    pauses: Optional[Sequence[float]] = None,
    cost: Optional[SegmentationCost] = None
) -> AnnotatedSentence:
    """Insert `<eol>`/`<eob>` into a token sequence at minimal cost.

    Lines never exceed max_chars_per_line (a lone over-long token gets a
    line of its own), blocks never exceed max_lines_per_block, and with
    hard pause breaks every pause above the threshold closes a block.
    Ties go to fewer breaks, then earlier block breaks. The result
    always ends with `<eob>`.
    """
    return segment_with_report(tokens, constraints, pauses, cost).sentence


def estimate_duration(sentence: Union[AnnotatedSentence, Sequence[str]], max_chars_per_second: float) -> SentenceDuration:
    """Time needed to read the sentence at the reading-speed limit."""
    tokens = sentence.tokens if isinstance(sentence, AnnotatedSentence) else list(sentence)
    return SentenceDuration(duration=char_count(tokens) / max_chars_per_second)


def _block_chars(block: UntimedBlock) -> int:
    return sum(char_count(line) for line in block)


def _make_blocks(
    blocks: Sequence[UntimedBlock],
    spans: Sequence[Tuple[int, int]],
    start_index: int
) -> List[SubtitleBlock]:
    result = []
    for number, (block, (start_ms, end_ms)) in enumerate(zip(blocks, spans)):
        if end_ms <= start_ms:
            raise TimingError(f"Block {start_index + number} would last {end_ms - start_ms} ms")
        result.append(SubtitleBlock(
            index=start_index + number,
            start=from_milliseconds(start_ms),
            end=from_milliseconds(end_ms),
            lines=tuple(line_text(line) for line in block)
        ))
    return result


def _aligned_spans(blocks: Sequence[UntimedBlock], words: Sequence[TimedWord]) -> List[Tuple[int, int]]:
    sentence = annotated_from_blocks(blocks)
    alignment = align_tokens(sentence, words)
    spans = []
    token_index = 0
    for number, block in enumerate(blocks):
        count = sum(len(line) for line in block)
        word_indices = [
            alignment.mapping[index]
            for index in range(token_index, token_index + count)
            if index in alignment.mapping
        ]
        token_index += count
        if not word_indices:
            raise TimingError(f"Block {number + 1} contains no timed word")
        spans.append((
            to_milliseconds(words[word_indices[0]].start_time),
            to_milliseconds(max(words[index].end_time for index in word_indices))
        ))
    return spans


def _proportional_spans(blocks: Sequence[UntimedBlock], total: float, offset: float, gap_ms: int) -> List[Tuple[int, int]]:
    chars = np.array([_block_chars(block) for block in blocks], dtype=float)
    bounds = offset + total * np.concatenate(([0.0], np.cumsum(chars) / chars.sum()))
    spans = []
    for number in range(len(blocks)):
        start_ms = to_milliseconds(float(bounds[number]))
        if number > 0:
            start_ms += gap_ms
        spans.append((start_ms, to_milliseconds(float(bounds[number + 1]))))
    return spans


def enforce_min_gap(spans: List[Tuple[int, int]], gap_ms: int) -> List[Tuple[int, int]]:
    """Trim ends so each block stops gap_ms before the next one starts."""
    trimmed = list(spans)
    for number in range(len(trimmed) - 1):
        start_ms, end_ms = trimmed[number]
        next_start = trimmed[number + 1][0]
        if next_start < start_ms:
            raise TimingError(f"Block {number + 2} starts before block {number + 1}")
        if next_start - end_ms < gap_ms:
            trimmed[number] = (start_ms, next_start - gap_ms)
    return trimmed


def assign_times(
    blocks: Sequence[UntimedBlock],
    words: Optional[Sequence[TimedWord]] = None,
    total: Optional[Union[SentenceDuration, float]] = None,
    offset: float = 0.0,
    start_index: int = 1,
    min_gap: float = DEFAULT_MIN_GAP
) -> List[SubtitleBlock]:
    """Give untimed blocks in and out times.

    With words, a block runs from the start of its first word to the end
    of its last word, and an earlier block is cut short to leave min_gap
    before the next. With a total duration, blocks share it in proportion
    to their characters from `offset` on, each later block starting
    min_gap after the previous boundary.

    Args:
        blocks: Blocks of one sentence, lines as token lists
        words: Timed words of the sentence
        total: Sentence duration, used when no words are given
        offset: Start time of the first block in proportional mode
        start_index: SRT index of the first block
        min_gap: Smallest gap between consecutive blocks, in seconds

    Returns:
        List[SubtitleBlock]: Timed blocks, consecutively indexed

    Raises:
        TimingError: If there is nothing to time or no usable source
        AlignmentError: If the words do not match the block tokens
    """
    if not blocks:
        raise TimingError("No blocks to time")
    gap_ms = to_milliseconds(min_gap)
    if words is not None:
        spans = enforce_min_gap(_aligned_spans(blocks, words), gap_ms)
        mode = "alignment"
    elif total is not None:
        duration = total.duration if isinstance(total, SentenceDuration) else float(total)
        if duration <= 0:
            raise TimingError(f"Non-positive duration {duration}")
        spans = _proportional_spans(blocks, duration, offset, gap_ms)
        mode = "proportional"
    else:
        raise TimingError("Either word timings or a total duration is required")
    logger.debug(f"Timed {len(blocks)} blocks ({mode} mode)")
    return _make_blocks(blocks, spans, start_index)


def join_timed_blocks(
    groups: Sequence[Sequence[SubtitleBlock]],
    start_index: int = 1,
    min_gap: float = DEFAULT_MIN_GAP
) -> List[SubtitleBlock]:
    """Concatenate per-sentence blocks, renumbering them consecutively and
    keeping min_gap across sentence boundaries."""
    flat = [block for group in groups for block in group]
    if not flat:
        return []
    spans = enforce_min_gap(
        [(to_milliseconds(block.start), to_milliseconds(block.end)) for block in flat],
        to_milliseconds(min_gap)
    )
    return _make_blocks([[[line] for line in block.lines] for block in flat], spans, start_index)
