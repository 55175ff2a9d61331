# subkit/services/prosody.py

from typing import Dict, List, Optional, Sequence, Tuple
import logging
import unicodedata
import numpy as np
from subkit.core.exceptions import AlignmentError, ProsodyError
from subkit.models.corpus import WordTimingFile
from subkit.models.models import AnnotatedSentence, Break, BreakSymbol, Constraints, TimedWord
from subkit.models.reports import (
    CategoryStats,
    PauseAnalysisReport,
    PauseCategory,
    PauseRecord,
    PauseStats,
    TokenAlignment
)
from subkit.services.metrics import Corpus, corpus_sentences

logger = logging.getLogger(__name__)

DEFAULT_EOB_THRESHOLD = Constraints.model_fields["eob_pause_threshold"].default


def _is_punctuation(char: str) -> bool:
    return unicodedata.category(char)[0] in ("P", "S")


def normalize_surface(text: str) -> str:
    """Lowercase and strip leading and trailing punctuation."""
    start, end = 0, len(text)
    while start < end and _is_punctuation(text[start]):
        start += 1
    while end > start and _is_punctuation(text[end - 1]):
        end -= 1
    return text[start:end].lower()


def is_lexical(text: str) -> bool:
    """A token that is more than punctuation, and so has a timed word."""
    return bool(normalize_surface(text))


def align_tokens(
    sentence: AnnotatedSentence,
    words: Sequence[TimedWord],
    sentence_id: Optional[int] = None
) -> TokenAlignment:
    """Map lexical tokens 1:1 and in order onto lexical timed words.

    Punctuation-only tokens and words take no part in the mapping. A
    count mismatch is an error; differing surfaces only warn.
    """
    label = f"sentence {sentence_id}" if sentence_id is not None else "sentence"
    tokens = sentence.tokens
    token_indices = [index for index, token in enumerate(tokens) if is_lexical(token)]
    word_indices = [index for index, word in enumerate(words) if is_lexical(word.surface)]
    if len(token_indices) != len(word_indices):
        raise AlignmentError(
            f"{label}: token/word count mismatch {len(token_indices)}≠{len(word_indices)}"
        )

    warnings = []
    for token_index, word_index in zip(token_indices, word_indices):
        token_form = normalize_surface(tokens[token_index])
        word_form = normalize_surface(words[word_index].surface)
        if token_form != word_form:
            warnings.append(
                f"{label}: token {token_index} {tokens[token_index]!r} aligned to word {words[word_index].surface!r}"
            )
    for warning in warnings:
        logger.warning(warning)
    return TokenAlignment(mapping=dict(zip(token_indices, word_indices)), warnings=warnings)


def _token_item_positions(sentence: AnnotatedSentence) -> List[int]:
    return [position for position, item in enumerate(sentence.items) if not isinstance(item, Break)]


def _category_between(sentence: AnnotatedSentence, first: int, second: int) -> PauseCategory:
    """Strongest break among the items strictly between two item positions."""
    symbols = {
        item.symbol
        for item in sentence.items[first + 1:second]
        if isinstance(item, Break)
    }
    if BreakSymbol.BLOCK in symbols:
        return PauseCategory.BLOCK
    if BreakSymbol.LINE in symbols:
        return PauseCategory.LINE
    return PauseCategory.NONE


def pause_records(
    sentence: AnnotatedSentence,
    words: Sequence[TimedWord],
    alignment: TokenAlignment
) -> Tuple[List[PauseRecord], List[str]]:
    """Pause records for an already aligned sentence, plus clamp warnings."""
    positions = _token_item_positions(sentence)
    aligned = sorted(alignment.mapping.items())
    records: List[PauseRecord] = []
    warnings: List[str] = []
    for (token_a, word_a), (token_b, word_b) in zip(aligned, aligned[1:]):
        gap = words[word_b].start_time - words[word_a].end_time
        clamped = gap < 0
        if clamped:
            warnings.append(
                f"overlapping words {words[word_a].surface!r}/{words[word_b].surface!r}: gap {gap:.3f} clamped to 0"
            )
            gap = 0.0
        records.append(PauseRecord(
            after_word_index=word_a,
            gap=gap,
            category=_category_between(sentence, positions[token_a], positions[token_b]),
            clamped=clamped
        ))
    return records, warnings


def compute_pauses(sentence: AnnotatedSentence, words: Sequence[TimedWord]) -> List[PauseRecord]:
    """Silence between every two consecutive aligned words.

    gap = start of the next word minus end of this word; the category is
    the break (if any) written between their tokens.
    """
    records, warnings = pause_records(sentence, words, align_tokens(sentence, words))
    for warning in warnings:
        logger.warning(warning)
    return records


def gap_pauses(sentence: AnnotatedSentence, words: Sequence[TimedWord]) -> List[float]:
    """Pause at each token gap, the segmenter's prosodic input.

    Punctuation tokens stick to the word before them, so the pause
    between two words sits at the gap just before the second word.
    """
    alignment = align_tokens(sentence, words)
    tokens = sentence.tokens
    pauses = [0.0] * (len(tokens) - 1)
    previous_word: Optional[int] = None
    for token_index in range(len(tokens)):
        word_index = alignment.mapping.get(token_index)
        if word_index is None:
            continue
        if previous_word is not None and token_index > 0:
            gap = words[word_index].start_time - words[previous_word].end_time
            pauses[token_index - 1] = max(gap, 0.0)
        previous_word = word_index
    return pauses


def pause_stats(records: Sequence[PauseRecord]) -> PauseStats:
    """Count, mean and population standard deviation per category."""
    categories: Dict[PauseCategory, CategoryStats] = {}
    for category in PauseCategory:
        gaps = np.array([record.gap for record in records if record.category is category], dtype=float)
        if gaps.size == 0:
            categories[category] = CategoryStats()
            continue
        categories[category] = CategoryStats(
            count=int(gaps.size),
            mean=float(np.mean(gaps)),
            stdev=float(np.std(gaps)) if gaps.size > 1 else 0.0
        )
    return PauseStats(categories=categories)


def derive_eob_threshold(stats: PauseStats) -> float:
    """Block-break pause mean minus one standard deviation."""
    block = stats.get(PauseCategory.BLOCK)
    if block.count < 2:
        raise ProsodyError(
            f"Need at least 2 block-break pauses to derive a threshold, found {block.count}; "
            f"use the default {DEFAULT_EOB_THRESHOLD} s"
        )
    threshold = block.mean - block.stdev
    if threshold <= 0:
        raise ProsodyError(
            f"Derived threshold {threshold:.3f} s is not positive; use the default {DEFAULT_EOB_THRESHOLD} s"
        )
    return threshold


def analyze_corpus(corpus: Corpus, timings: WordTimingFile) -> PauseAnalysisReport:
    """Pause statistics over every alignable sentence of a corpus.

    Sentences that fail alignment are skipped and counted; a corpus in
    which every sentence fails is an error.

    Args:
        corpus: Annotated reference sentences
        timings: Word timings keyed by 0-based sentence id

    Returns:
        PauseAnalysisReport with per-category statistics and the threshold

    Raises:
        ProsodyError: If the corpus is empty or nothing aligns
    """
    sentences = corpus_sentences(corpus)
    if not sentences:
        raise ProsodyError("no sentences")
    logger.info(f"Analyzing pauses of {len(sentences)} sentences")

    records: List[PauseRecord] = []
    sentence_ids: List[int] = []
    warnings: List[str] = list(timings.warnings)
    skipped = 0
    for sentence_id, sentence in enumerate(sentences):
        words = timings.for_sentence(sentence_id)
        try:
            alignment = align_tokens(sentence, words, sentence_id)
        except AlignmentError as e:
            logger.warning(f"Skipping {e}")
            warnings.append(f"skipped {e}")
            skipped += 1
            continue
        sentence_records, clamp_warnings = pause_records(sentence, words, alignment)
        warnings.extend(alignment.warnings)
        warnings.extend(f"sentence {sentence_id}: {warning}" for warning in clamp_warnings)
        records.extend(sentence_records)
        sentence_ids.extend([sentence_id] * len(sentence_records))

    if skipped == len(sentences):
        raise ProsodyError(f"All {skipped} sentences failed alignment")

    extra = sorted(set(timings.words) - set(range(len(sentences))))
    if extra:
        warnings.append(f"timings for {len(extra)} sentence ids beyond the corpus ignored")

    stats = pause_stats(records)
    threshold = None
    try:
        threshold = derive_eob_threshold(stats)
    except ProsodyError as e:
        logger.warning(str(e))
        warnings.append(str(e))

    report = PauseAnalysisReport(
        stats=stats,
        threshold=threshold,
        sentences=len(sentences),
        skipped=skipped,
        clamped=sum(1 for record in records if record.clamped),
        records=records,
        sentence_ids=sentence_ids,
        warnings=warnings
    )
    logger.info(f"Collected {len(records)} pauses, skipped {skipped} sentences")
    return report


def records_tsv(report: PauseAnalysisReport) -> str:
    """Every pause record as TSV, for plotting outside the toolkit."""
    lines = ["#sentence_id\tafter_word_index\tgap\tcategory\tclamped"]
    for sentence_id, record in zip(report.sentence_ids, report.records):
        lines.append(
            f"{sentence_id}\t{record.after_word_index}\t{record.gap:.6f}\t"
            f"{record.category.value}\t{int(record.clamped)}"
        )
    return "\n".join(lines) + "\n"
