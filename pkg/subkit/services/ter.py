# subkit/services/ter.py

from collections import defaultdict
from typing import Dict, List, Sequence, Tuple
import logging
import editdistance
import numpy as np
from subkit.core.exceptions import MetricError
from subkit.models.reports import EditScript

logger = logging.getLogger(__name__)

DEFAULT_MAX_SHIFT_SIZE = 10


def _alignment(hyp: Sequence[str], ref: Sequence[str]) -> Tuple[Tuple[int, int, int], List[int]]:
    """Levenshtein edit counts plus, per reference token, the number of
    hypothesis tokens in front of it in the alignment.

    The backtrace prefers a diagonal step, then a deletion, then an
    insertion, so equal-cost alignments always yield the same counts.
    """
    n, m = len(hyp), len(ref)
    dist = np.zeros((n + 1, m + 1), dtype=np.int64)
    dist[:, 0] = np.arange(n + 1)
    dist[0, :] = np.arange(m + 1)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            diagonal = dist[i - 1, j - 1] + (hyp[i - 1] != ref[j - 1])
            dist[i, j] = min(diagonal, dist[i - 1, j] + 1, dist[i, j - 1] + 1)

    insertions = deletions = substitutions = 0
    anchors = [0] * m
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and dist[i, j] == dist[i - 1, j - 1] + (hyp[i - 1] != ref[j - 1]):
            substitutions += int(hyp[i - 1] != ref[j - 1])
            i, j = i - 1, j - 1
            anchors[j] = i
        elif i > 0 and dist[i, j] == dist[i - 1, j] + 1:
            deletions += 1
            i -= 1
        else:
            insertions += 1
            j -= 1
            anchors[j] = i
    return (insertions, deletions, substitutions), anchors


def levenshtein_edits(hyp: Sequence[str], ref: Sequence[str]) -> Tuple[int, int, int]:
    """Insertions, deletions and substitutions turning hyp into ref."""
    return _alignment(hyp, ref)[0]


def _reference_spans(ref: Sequence[str], max_size: int) -> Dict[Tuple[str, ...], List[int]]:
    """Start positions of every reference span of up to `max_size` tokens."""
    spans: Dict[Tuple[str, ...], List[int]] = defaultdict(list)
    for size in range(1, max_size + 1):
        for start in range(len(ref) - size + 1):
            spans[tuple(ref[start:start + size])].append(start)
    return spans


def _best_shift(
    hyp: List[str],
    ref: List[str],
    spans: Dict[Tuple[str, ...], List[int]],
    max_shift_size: int,
    current: int
):
    """Shift with the lowest 1 + distance, if it beats `current`.

    A span may only move to where it lines up with an identical
    reference span under the current alignment. Candidates are visited
    by span length, then source, then destination, and only a strictly
    better total replaces the best so far.
    """
    _, anchors = _alignment(hyp, ref)
    best_total = current
    best = None
    for size in range(1, min(max_shift_size, len(hyp)) + 1):
        for start in range(len(hyp) - size + 1):
            span = hyp[start:start + size]
            ref_starts = spans.get(tuple(span))
            if not ref_starts:
                continue
            rest = hyp[:start] + hyp[start + size:]
            destinations = set()
            for ref_start in ref_starts:
                anchor = anchors[ref_start]
                if anchor <= start:
                    destinations.add(anchor)
                elif anchor >= start + size:
                    destinations.add(anchor - size)
            for dest in sorted(destinations):
                if dest == start:
                    continue
                shifted = rest[:dest] + span + rest[dest:]
                total = 1 + editdistance.eval(shifted, ref)
                if total < best_total:
                    best_total = total
                    best = shifted
    return best, best_total


def ter(hyp_tokens: Sequence[str], ref_tokens: Sequence[str], max_shift_size: int = DEFAULT_MAX_SHIFT_SIZE) -> EditScript:
    """Translation edit rate with greedy block shifts.

    Shifts move a span of up to `max_shift_size` hypothesis tokens to a
    place where it lines up with the same span in the reference. One is
    applied per round while it strictly lowers shifts plus edit distance;
    the remaining distance is then split into insertions, deletions and
    substitutions.

    Args:
        hyp_tokens: Hypothesis tokens
        ref_tokens: Reference tokens
        max_shift_size: Longest span a shift may move

    Returns:
        EditScript: Edit counts and reference length

    Raises:
        MetricError: If the reference is empty
    """
    hyp = list(hyp_tokens)
    ref = list(ref_tokens)
    if not ref:
        raise MetricError("TER is undefined for an empty reference")

    spans = _reference_spans(ref, max_shift_size)
    shifts = 0
    distance = editdistance.eval(hyp, ref)
    while distance > 0:
        shifted, total = _best_shift(hyp, ref, spans, max_shift_size, distance)
        if shifted is None:
            break
        hyp = shifted
        shifts += 1
        distance = total - 1

    insertions, deletions, substitutions = levenshtein_edits(hyp, ref)
    logger.debug(f"TER: {shifts} shifts, {insertions + deletions + substitutions} edits, |ref|={len(ref)}")
    return EditScript(
        insertions=insertions,
        deletions=deletions,
        substitutions=substitutions,
        shifts=shifts,
        reference_length=len(ref)
    )
