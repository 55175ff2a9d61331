# tests/services/test_corpus_parser.py

import pytest

from subkit.core.exceptions import FormatError
from subkit.models.models import BreakSymbol
from subkit.services.corpus_parser import CorpusParser
from subkit.tests.conftest import ANNOTATED_EXAMPLE


@pytest.fixture
def parser():
    """Create a corpus parser instance for testing."""
    return CorpusParser()


def test_parse_example(parser):
    """Test the example parses to 13 tokens and three breaks."""
    corpus = parser.parse_annotated_corpus(ANNOTATED_EXAMPLE + "\n")
    assert len(corpus) == 1
    assert len(corpus[0].tokens) == 13
    assert corpus[0].breaks == [BreakSymbol.LINE, BreakSymbol.BLOCK, BreakSymbol.BLOCK]
    assert corpus.warnings == []


def test_emit_is_inverse_of_parse(parser):
    """Test a canonical corpus is reproduced byte for byte."""
    text = "a b <eol> c <eob>\nd e <eob>\n"
    assert parser.emit_annotated_corpus(parser.parse_annotated_corpus(text).sentences) == text


def test_crlf_bom_and_extra_spaces_are_tolerated(parser):
    """Test CRLF endings, a BOM and repeated spaces parse like clean input."""
    corpus = parser.parse_annotated_corpus("\ufeffa  b <eob>\r\nc\t<eol> d\r\n")
    assert [str(sentence) for sentence in corpus.sentences] == ["a b <eob>", "c <eol> d"]


def test_strict_rejects_leading_break(parser):
    """Test strict mode reports the line of a leading break."""
    with pytest.raises(FormatError) as excinfo:
        parser.parse_annotated_corpus("a <eob>\n<eob> b\n", source="corpus.txt")
    assert excinfo.value.line == 2
    assert "corpus.txt" in str(excinfo.value)
    assert "begins with break" in str(excinfo.value)


def test_strict_rejects_consecutive_breaks(parser):
    """Test strict mode rejects two breaks in a row."""
    with pytest.raises(FormatError, match="consecutive"):
        parser.parse_annotated_corpus("a <eol> <eob> b\n")


def test_lenient_repairs_and_warns(parser):
    """Test lenient mode drops leading breaks and collapses runs."""
    corpus = parser.parse_annotated_corpus("<eol> a <eol> <eob> b <eol> <eol>\n", strict=False)
    assert str(corpus[0]) == "a <eob> b <eol>"
    assert len(corpus.warnings) == 3


def test_empty_line_handling(parser):
    """Test empty lines are errors in strict mode and skipped otherwise."""
    with pytest.raises(FormatError, match="empty line"):
        parser.parse_annotated_corpus("a\n\nb\n")
    corpus = parser.parse_annotated_corpus("a\n\nb\n", strict=False)
    assert len(corpus) == 2
    assert corpus.warnings == ["line 2: skipped empty line"]


def test_unknown_markup_is_rejected(parser):
    """Test markup other than <eol>/<eob> is a format error."""
    with pytest.raises(FormatError, match="unknown markup"):
        parser.parse_annotated_corpus("a <br> b\n", strict=False)


def test_break_only_line_is_rejected(parser):
    """Test a line of nothing but breaks fails even in lenient mode."""
    with pytest.raises(FormatError, match="only break"):
        parser.parse_annotated_corpus("<eob> <eol>\n", strict=False)


def test_empty_text_is_empty_corpus(parser):
    """Test empty input yields an empty corpus."""
    assert len(parser.parse_annotated_corpus("")) == 0
