# tests/services/test_metrics.py

import math

import pytest
from hypothesis import given, settings, strategies as st

from subkit.core.exceptions import CorpusMismatchError, MetricError
from subkit.models.models import AnnotatedSentence, Constraints, SentenceDuration
from subkit.services.corpus_parser import corpus_parser
from subkit.services.metrics import MetricsService
from subkit.tests.conftest import evaluation_corpora


@pytest.fixture
def metrics():
    """Create a metrics service instance for testing."""
    return MetricsService()


def sentence(text: str) -> AnnotatedSentence:
    return AnnotatedSentence.from_sequence(text.split())


def corpus(*texts: str):
    return [sentence(text) for text in texts]


def test_bleu_hand_computed(metrics):
    """Test BLEU-4 against precisions 5/6, 3/5, 2/4 and 1/3."""
    score = metrics.bleu(corpus("the cat sat on a mat"), corpus("the cat sat on the mat"))
    assert score == pytest.approx(100 * (1 / 12) ** 0.25, abs=1e-4)
    assert score == pytest.approx(53.7285, abs=1e-4)


def test_bleu_identity_is_100(metrics):
    """Test a corpus scored against itself reaches 100."""
    sentences = corpus("one two three four <eol> five <eob>", "six seven eight nine <eob>")
    assert metrics.bleu(sentences, sentences) == pytest.approx(100.0)
    assert metrics.bleu(sentences, sentences, with_breaks=False) == pytest.approx(100.0)


def test_bleu_short_sentences_identity_is_100(metrics):
    """Test a corpus without any 4-gram still scores 100 against itself."""
    sentences = corpus("hello world", "hi there <eob>")
    assert metrics.bleu(sentences, sentences) == pytest.approx(100.0)
    assert metrics.bleu(sentences, sentences, with_breaks=False) == pytest.approx(100.0)
    assert metrics.bleu(corpus("hello world", "hi here <eob>"), sentences) < 100.0


def test_bleu_on_evaluation_corpus(metrics):
    """Test pooled BLEU with and without breaks on the 20-sentence corpus."""
    hyp_text, ref_text, _ = evaluation_corpora()
    hyp = corpus_parser.parse_annotated_corpus(hyp_text)
    ref = corpus_parser.parse_annotated_corpus(ref_text)
    precisions = [185 / 190, 150 / 170, 115 / 150, 85 / 130]
    expected = 100 * math.exp(1 - 200 / 190) * math.prod(precisions) ** 0.25
    assert metrics.bleu(hyp, ref) == pytest.approx(expected, abs=1e-6)
    assert metrics.bleu(hyp, ref, with_breaks=False) == pytest.approx(100.0)


def test_bleu_requires_equal_sizes(metrics):
    """Test corpora of different sizes cannot be scored."""
    with pytest.raises(CorpusMismatchError):
        metrics.bleu(corpus("a b c d"), corpus("a b c d", "e f g h"))


def test_cpl_conformity(metrics):
    """Test a 46-character line fails the 42-character limit."""
    sentences = corpus(
        "Un cadre d'une autre entreprise aime expliquer <eol> ceci <eob>",
        "court <eol> aussi <eob>",
        "a <eol> b <eol> c <eob>",
        "fine <eob>"
    )
    assert metrics.cpl_conformity(sentences) == pytest.approx(50.0)
    assert metrics.cpl_conformity(sentences, Constraints(max_chars_per_line=50, max_lines_per_block=3)) == 100.0


def test_cpl_requires_sentences(metrics):
    """Test CPL conformity of an empty corpus is undefined."""
    with pytest.raises(MetricError, match="no sentences"):
        metrics.cpl_conformity([])


def test_cps_conformity(metrics):
    """Test reading speed counts characters without breaks."""
    sentences = corpus("abcdefghij <eol> klmnopqrst <eob>", "abcdefghij <eob>")
    # 21 characters in 1.0 s conforms, 10 characters in 0.4 s does not
    durations = {0: SentenceDuration(duration=1.0), 1: 0.4}
    assert metrics.cps_conformity(sentences, durations) == pytest.approx(50.0)


def test_cps_missing_duration(metrics):
    """Test a sentence without a duration is an error."""
    with pytest.raises(MetricError, match="No duration for sentence 1"):
        metrics.cps_conformity(corpus("a", "b"), {0: 1.0})


def test_masking(metrics):
    """Test words become W and breaks keep or merge their symbol."""
    masked = metrics.mask_tokens(sentence("a b <eol> c <eob>"))
    assert masked == ["W", "W", "<eol>", "W", "<eob>"]
    assert metrics.mask_tokens(sentence("a <eol> b <eob>"), merge_break_types=True) == ["W", "<br>", "W", "<br>"]


def test_ter_br_example(metrics):
    """Test a block break one word too early costs one shift."""
    script = metrics.ter_br(sentence("a b <eob>"), sentence("a <eob> b"))
    assert script.shifts == 1
    assert script.score == pytest.approx(1 / 3)


def test_ter_br_merged_types(metrics):
    """Test merging break types hides <eol>/<eob> confusion."""
    hyp, ref = sentence("a <eob> b <eob>"), sentence("a <eol> b <eob>")
    assert metrics.ter_br(hyp, ref).edits == 1
    assert metrics.ter_br(hyp, ref, merge_break_types=True).edits == 0


def test_corpus_ter_br_on_evaluation_corpus(metrics):
    """Test corpus TER-br pools 15 edits over 200 masked reference tokens."""
    hyp_text, ref_text, _ = evaluation_corpora()
    hyp = corpus_parser.parse_annotated_corpus(hyp_text)
    ref = corpus_parser.parse_annotated_corpus(ref_text)
    score, scripts = metrics.corpus_ter_br(hyp, ref)
    assert score == pytest.approx(7.5)
    assert len(scripts) == 20
    assert sum(script.edits for script in scripts[:10]) == 0


def test_break_type_accuracy_on_evaluation_corpus(metrics):
    """Test only the 15 pairs with matching break counts are compared."""
    hyp_text, ref_text, _ = evaluation_corpora()
    hyp = corpus_parser.parse_annotated_corpus(hyp_text)
    ref = corpus_parser.parse_annotated_corpus(ref_text)
    accuracy, filtered = metrics.break_type_accuracy(hyp, ref)
    assert filtered == 15
    assert accuracy == pytest.approx(40 / 45 * 100)


def test_break_type_accuracy_half():
    """Test half the compared breaks agreeing gives 50."""
    metrics = MetricsService()
    hyp = corpus("a <eob> b <eob>", "c <eob> d <eol> e", "x <eob>")
    ref = corpus("a <eol> b <eob>", "c <eob> d <eob> e", "x <eol> y <eob>")
    accuracy, filtered = metrics.break_type_accuracy(hyp, ref)
    assert filtered == 2
    assert accuracy == pytest.approx(50.0)


def test_break_type_accuracy_none_when_nothing_qualifies(metrics):
    """Test no comparable pair gives None rather than a number."""
    accuracy, filtered = metrics.break_type_accuracy(corpus("a <eob>"), corpus("a <eol> b <eob>"))
    assert accuracy is None
    assert filtered == 0


def test_joint_break_accuracy_shares_the_filtered_set(metrics):
    """Test a pair is dropped for every system when one system disagrees in count."""
    ref = corpus("a <eol> b <eob>", "c <eol> d <eob>")
    first = corpus("a <eol> b <eob>", "c <eol> d <eob>")
    second = corpus("a <eob> b <eob>", "c d <eob>")
    accuracies, filtered = metrics.joint_break_type_accuracy([first, second], ref)
    assert filtered == 1
    assert accuracies == [pytest.approx(100.0), pytest.approx(50.0)]


words = st.sampled_from(["alpha", "beta", "gamma", "delta"])
labels = st.sampled_from([None, "<eol>", "<eob>"])


@st.composite
def annotated(draw, size):
    """Random words with random breaks after them; the last is always <eob>."""
    gaps = [draw(labels) for _ in range(size - 1)] + ["<eob>"]
    items = []
    for label in gaps:
        items.append(draw(words))
        if label:
            items.append(label)
    return items


@st.composite
def rewordings(draw):
    size = draw(st.integers(min_value=1, max_value=8))
    hyp = draw(annotated(size))
    reworded = [item if item.startswith("<") else draw(words) for item in hyp]
    ref = draw(annotated(draw(st.integers(min_value=1, max_value=8))))
    return hyp, reworded, ref


@settings(max_examples=1000, deadline=None)
@given(rewordings())
def test_ter_br_ignores_words(triple):
    """Test changing hypothesis words without moving breaks keeps TER-br."""
    metrics = MetricsService()
    hyp, reworded, ref = (AnnotatedSentence.from_sequence(items) for items in triple)
    assert metrics.ter_br(hyp, ref) == metrics.ter_br(reworded, ref)
    assert metrics.ter_br(hyp, hyp).edits == 0
