# tests/services/test_timing_parser.py

import pytest

from subkit.core.exceptions import FormatError
from subkit.services.timing_parser import TimingParser
from subkit.tests.conftest import EXAMPLE_WORDS, timings_tsv


@pytest.fixture
def parser():
    """Create a timing parser instance for testing."""
    return TimingParser()


def test_parse_example_timings(parser):
    """Test the example timings group into one sentence of 12 words."""
    timings = parser.parse_word_timings("#id\tword\tstart\tend\n" + timings_tsv(EXAMPLE_WORDS))
    words = timings.for_sentence(0)
    assert len(words) == 12
    assert words[0].surface == "This"
    assert words[-1].end_time == pytest.approx(36.191)
    assert timings.record_count == 12
    assert timings.for_sentence(1) == []


def test_records_need_not_be_contiguous(parser):
    """Test interleaved sentences are grouped by id."""
    text = "0\ta\t0.0\t0.5\n1\tx\t9.0\t9.5\n0\tb\t0.6\t1.0\n"
    timings = parser.parse_word_timings(text)
    assert [word.surface for word in timings.for_sentence(0)] == ["a", "b"]
    assert [word.surface for word in timings.for_sentence(1)] == ["x"]


@pytest.mark.parametrize("line,message", [
    ("0\ta\t0.0\n", "4 tab-separated fields"),
    ("x\ta\t0.0\t1.0\n", "sentence id"),
    ("0\ta\tsoon\t1.0\n", "non-numeric start"),
    ("0\ta\tnan\t1.0\n", "non-finite"),
    ("0\ta\t-1.0\t1.0\n", "negative start"),
    ("0\ta\t2.0\t1.0\n", "before start"),
])
def test_bad_timing_records(parser, line, message):
    """Test malformed records are format errors naming their line."""
    with pytest.raises(FormatError, match=message) as excinfo:
        parser.parse_word_timings("0\tfirst\t0.0\t0.0\n" + line, source="t.tsv")
    assert excinfo.value.line == 2
    assert excinfo.value.source == "t.tsv"


def test_decreasing_start_is_rejected(parser):
    """Test start times within a sentence may not go backwards."""
    with pytest.raises(FormatError, match="earlier than previous"):
        parser.parse_word_timings("0\ta\t1.0\t1.2\n0\tb\t0.5\t0.7\n")


def test_parse_ctm_numeric_utterances(parser):
    """Test numeric utterance ids become sentence ids; end = start + duration."""
    text = "3 A 0.50 0.20 hello 0.9\n3 A 0.80 0.30 world\n"
    timings = parser.parse_ctm(text)
    words = timings.for_sentence(3)
    assert [word.surface for word in words] == ["hello", "world"]
    assert words[1].end_time == pytest.approx(1.1)
    assert timings.warnings == []


def test_parse_ctm_named_utterances(parser):
    """Test named utterances are numbered in order of appearance."""
    text = "talk-b 1 0.0 0.1 a\ntalk-a 1 5.0 0.1 b\ntalk-b 1 0.2 0.1 c\n"
    timings = parser.parse_ctm(text)
    assert [word.surface for word in timings.for_sentence(0)] == ["a", "c"]
    assert [word.surface for word in timings.for_sentence(1)] == ["b"]
    assert len(timings.warnings) == 1


def test_parse_ctm_rejects_negative_duration(parser):
    """Test a negative CTM duration is a format error."""
    with pytest.raises(FormatError, match="negative duration"):
        parser.parse_ctm("0 A 1.0 -0.1 a\n")


def test_parse_durations(parser):
    """Test durations parse by id; comments and blank lines are skipped."""
    table = parser.parse_durations("# id\tseconds\n0\t2.5\n\n2\t1\n")
    assert 0 in table and 2 in table and 1 not in table
    assert table[0].duration == 2.5
    assert table.source == "durations"


@pytest.mark.parametrize("text,message", [
    ("0\t1.0\n0\t2.0\n", "duplicate"),
    ("0\t0\n", "non-positive"),
    ("0\t-3\n", "non-positive"),
    ("0 1.0\n", "2 tab-separated fields"),
])
def test_bad_durations(parser, text, message):
    """Test invalid duration files are rejected."""
    with pytest.raises(FormatError, match=message):
        parser.parse_durations(text)


def test_durations_from_timings(parser):
    """Test a sentence lasts from its first start to its last end."""
    timings = parser.parse_word_timings(timings_tsv(EXAMPLE_WORDS) + "1\tx\t5.0\t5.0\n")
    table = parser.durations_from_timings(timings)
    assert table[0].duration == pytest.approx(36.191 - 31.066)
    assert 1 not in table
    assert table.source == "timings"
    assert len(table.warnings) == 1
