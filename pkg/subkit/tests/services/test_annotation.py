# tests/services/test_annotation.py

import pytest
from hypothesis import given, strategies as st
from pydantic import ValidationError

from subkit.core.exceptions import StructureError
from subkit.models.models import AnnotatedSentence, BreakSymbol
from subkit.services.annotation import (
    annotated_from_blocks,
    blocks_from_annotated,
    char_count,
    ensure_final_eob,
    normalize_sentence,
    sentence_text,
    strip_breaks,
    strip_final_eob
)
from subkit.tests.conftest import PLAIN_EXAMPLE


def sentence(text: str) -> AnnotatedSentence:
    return AnnotatedSentence.from_sequence(text.split())


def test_blocks_from_example(example_sentence):
    """Test the example splits into a two-line block and a one-line block."""
    assert blocks_from_annotated(example_sentence) == [
        [
            ["This", "kind", "of", "harassment", "keeps", "women"],
            ["from", "accessing", "the", "internet", "--"]
        ],
        [["essentially,", "knowledge."]]
    ]


def test_missing_final_eob_still_closes_block():
    """Test a sentence without a trailing <eob> yields the same blocks."""
    assert blocks_from_annotated(sentence("a b <eol> c")) == blocks_from_annotated(sentence("a b <eol> c <eob>"))


def test_trailing_eol_closes_line():
    """Test a trailing <eol> ends a block that holds one line."""
    assert blocks_from_annotated(sentence("a b <eol>")) == [[["a", "b"]]]


def test_annotated_from_blocks_closes_every_block():
    """Test every block, the last included, ends with <eob>."""
    result = annotated_from_blocks([[["a"], ["b", "c"]], [["d"]]])
    assert str(result) == "a <eol> b c <eob> d <eob>"


def test_annotated_from_blocks_rejects_empty_structures():
    """Test empty blocks, lines or block lists raise StructureError."""
    with pytest.raises(StructureError):
        annotated_from_blocks([])
    with pytest.raises(StructureError):
        annotated_from_blocks([[]])
    with pytest.raises(StructureError):
        annotated_from_blocks([[["a"], []]])


def test_strip_breaks(example_sentence):
    """Test stripping breaks keeps all 13 tokens in order."""
    tokens = strip_breaks(example_sentence)
    assert len(tokens) == 13
    assert " ".join(tokens) == PLAIN_EXAMPLE
    assert sentence_text(example_sentence) == PLAIN_EXAMPLE


def test_final_eob_helpers():
    """Test adding, converting and stripping the sentence-final break."""
    assert str(ensure_final_eob(sentence("a b"))) == "a b <eob>"
    assert str(ensure_final_eob(sentence("a <eol> b <eol>"))) == "a <eol> b <eob>"
    assert str(ensure_final_eob(sentence("a <eob>"))) == "a <eob>"
    assert str(strip_final_eob(sentence("a <eol> b <eob>"))) == "a <eol> b"
    assert str(strip_final_eob(sentence("a <eol>"))) == "a <eol>"
    assert str(normalize_sentence(sentence("a"), normalize_final_eob=True)) == "a <eob>"
    assert str(normalize_sentence(sentence("a <eob>"), strip_final=True)) == "a"


def test_char_count_counts_code_points_and_spaces():
    """Test line length is code points plus one space between tokens."""
    assert char_count([]) == 0
    assert char_count(["héllo"]) == 5
    assert char_count(["Un", "cadre", "d'une", "autre", "entreprise", "aime", "expliquer"]) == 46


def test_sentence_invariants_are_enforced():
    """Test the model rejects leading, adjacent and break-only sequences."""
    with pytest.raises(ValidationError):
        sentence("<eob> a")
    with pytest.raises(ValidationError):
        sentence("a <eol> <eob> b")
    with pytest.raises(ValidationError):
        AnnotatedSentence.from_sequence(["<eob>"])


words = st.text(alphabet="abcdefgh'.,", min_size=1, max_size=6)
lines = st.lists(words, min_size=1, max_size=4)
blocks = st.lists(st.lists(lines, min_size=1, max_size=3), min_size=1, max_size=4)


@given(blocks)
def test_blocks_survive_annotation(structure):
    """Test blocks -> annotated -> blocks returns the same structure."""
    annotated = annotated_from_blocks(structure)
    assert blocks_from_annotated(annotated) == structure
    assert annotated.breaks[-1] is BreakSymbol.BLOCK
