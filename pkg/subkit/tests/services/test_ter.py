# tests/services/test_ter.py

import random
from typing import List, Sequence, Set, Tuple

import editdistance
import pytest
from hypothesis import given, settings, strategies as st

from subkit.core.exceptions import MetricError
from subkit.services.ter import levenshtein_edits, ter


def all_shifts(tokens: Tuple[str, ...]) -> Set[Tuple[str, ...]]:
    """Every sequence reachable by moving one contiguous span elsewhere."""
    results = set()
    n = len(tokens)
    for start in range(n):
        for end in range(start + 1, n + 1):
            span = tokens[start:end]
            rest = tokens[:start] + tokens[end:]
            for dest in range(len(rest) + 1):
                if dest != start:
                    results.add(rest[:dest] + span + rest[dest:])
    return results


def optimal_edits(hyp: Sequence[str], ref: Sequence[str]) -> int:
    """Fewest shifts plus edit distance, searching every shift level by level."""
    best = editdistance.eval(list(hyp), list(ref))
    frontier = {tuple(hyp)}
    depth = 0
    while depth + 1 < best:
        depth += 1
        reached = set()
        for state in frontier:
            for shifted in all_shifts(state):
                reached.add(shifted)
                best = min(best, depth + editdistance.eval(list(shifted), list(ref)))
        frontier = reached
    return best


def perturbed_pairs(count: int, seed: int) -> List[Tuple[str, List[str], List[str]]]:
    """Reference of distinct tokens and a hypothesis one or two edits away."""
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        ref = [f"t{index}" for index in range(rng.randint(3, 8))]
        kind = rng.choice(["shift", "substitution", "shift+substitution"])
        hyp = list(ref)
        span: Tuple[int, int] = (0, 0)
        if "shift" in kind:
            start = rng.randrange(len(ref))
            end = rng.randint(start + 1, len(ref))
            moved = hyp[start:end]
            rest = hyp[:start] + hyp[end:]
            dest = rng.randint(0, len(rest))
            hyp = rest[:dest] + moved + rest[dest:]
            if hyp == ref:
                continue
            span = (dest, dest + len(moved))
        if "substitution" in kind:
            outside = [index for index in range(len(hyp)) if not span[0] <= index < span[1]]
            if not outside:
                continue
            hyp[rng.choice(outside)] = "fresh"
        pairs.append((kind, hyp, ref))
    return pairs


@pytest.mark.parametrize("kind,hyp,ref", perturbed_pairs(50, seed=13))
def test_edits_match_exhaustive_search(kind, hyp, ref):
    """Test greedy shifting finds the optimum on single-perturbation pairs."""
    script = ter(hyp, ref)
    assert script.edits == optimal_edits(hyp, ref)
    if kind == "shift":
        assert script.shifts == 1
        assert script.edits == 1


def test_break_shift_example():
    """Test a misplaced block break costs one shift."""
    script = ter(["W", "W", "<eob>"], ["W", "<eob>", "W"])
    assert script.shifts == 1
    assert script.edits == 1
    assert script.score == pytest.approx(1 / 3)


def test_identity_and_empty_hypothesis():
    """Test identical sequences score 0 and an empty hypothesis scores 1."""
    assert ter(["a", "b", "c"], ["a", "b", "c"]).score == 0
    script = ter([], ["a", "b", "c"])
    assert script.insertions == 3
    assert script.score == 1.0


def test_empty_reference_is_undefined():
    """Test TER against an empty reference raises MetricError."""
    with pytest.raises(MetricError):
        ter(["a"], [])


def test_levenshtein_breakdown():
    """Test the edit breakdown for simple cases."""
    assert levenshtein_edits(["a", "b"], ["a", "c", "b"]) == (1, 0, 0)
    assert levenshtein_edits(["a", "x", "b"], ["a", "b"]) == (0, 1, 0)
    assert levenshtein_edits(["a", "x"], ["a", "b"]) == (0, 0, 1)


def test_max_shift_size_limits_spans():
    """Test spans longer than max_shift_size are not moved."""
    ref = ["a", "b", "c", "d", "e"]
    hyp = ["c", "d", "e", "a", "b"]
    assert ter(hyp, ref).shifts == 1
    assert ter(hyp, ref, max_shift_size=1).edits > ter(hyp, ref).edits


token_lists = st.lists(st.sampled_from(["a", "b", "c", "d"]), max_size=7)


@settings(max_examples=500, deadline=None)
@given(token_lists, token_lists.filter(bool))
def test_greedy_never_exceeds_edit_distance(hyp, ref):
    """Test shifts only ever lower the total and the breakdown sums up."""
    script = ter(hyp, ref)
    assert script.edits <= editdistance.eval(hyp, ref)
    assert sum(levenshtein_edits(hyp, ref)) == editdistance.eval(hyp, ref)


def test_shift_must_line_up_with_reference():
    """Test a span is not moved to a place where it does not match the reference."""
    # "b" at the end would save an edit, but its aligned place is before the last "y"
    script = ter(["b", "a", "y", "y", "y"], ["a", "x", "x", "x", "b"])
    assert script.shifts == 0
    assert script.edits == 5
