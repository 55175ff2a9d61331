# subkit/services/metrics.py

from typing import List, Mapping, Optional, Sequence, Tuple, Union
import logging
import sacrebleu
from subkit.core.config import Settings, get_settings
from subkit.core.exceptions import CorpusMismatchError, MetricError
from subkit.models.corpus import CorpusFile, DurationTable
from subkit.models.models import AnnotatedSentence, Constraints, SentenceDuration, Token
from subkit.models.reports import EditScript
from subkit.services.annotation import blocks_from_annotated, char_count, line_text, strip_breaks
from subkit.services.ter import ter

logger = logging.getLogger(__name__)

Corpus = Union[CorpusFile, Sequence[AnnotatedSentence]]
Durations = Union[DurationTable, Mapping[int, Union[SentenceDuration, float]]]

# Symbol both break types collapse to when break types are merged
MERGED_BREAK = "<br>"


def corpus_sentences(corpus: Corpus) -> List[AnnotatedSentence]:
    if isinstance(corpus, CorpusFile):
        return list(corpus.sentences)
    return list(corpus)


def _paired(hyp: Corpus, ref: Corpus) -> Tuple[List[AnnotatedSentence], List[AnnotatedSentence]]:
    hyp_sentences, ref_sentences = corpus_sentences(hyp), corpus_sentences(ref)
    if len(hyp_sentences) != len(ref_sentences):
        raise CorpusMismatchError(
            f"Sentence count mismatch: {len(hyp_sentences)} hypothesis vs {len(ref_sentences)} reference"
        )
    return hyp_sentences, ref_sentences


def _duration(durations: Durations, sentence_id: int) -> float:
    if sentence_id not in durations:
        raise MetricError(f"No duration for sentence {sentence_id}")
    value = durations[sentence_id]
    return value.duration if isinstance(value, SentenceDuration) else float(value)


class MetricsService:
    """Corpus-level translation and subtitle-conformity metrics."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        logger.debug("Initialized MetricsService")

    def bleu(self, hyp: Corpus, ref: Corpus, with_breaks: bool = True) -> float:
        """Corpus BLEU-4 without smoothing over whitespace tokens.

        With `with_breaks` false both sides lose their break symbols
        first (BLEU-nob); otherwise breaks count as ordinary tokens.
        Orders the hypothesis has no n-grams of are left out of the mean,
        so a corpus of short sentences scored against itself gets 100.

        Args:
            hyp: Hypothesis sentences
            ref: Reference sentences, one per hypothesis sentence
            with_breaks: Keep `<eol>`/`<eob>` as tokens

        Returns:
            float: BLEU in [0, 100]

        Raises:
            CorpusMismatchError: If the corpora differ in size
        """
        hyp_sentences, ref_sentences = _paired(hyp, ref)

        def render(sentence: AnnotatedSentence) -> str:
            return str(sentence) if with_breaks else line_text(strip_breaks(sentence))

        result = sacrebleu.corpus_bleu(
            [render(sentence) for sentence in hyp_sentences],
            [[render(sentence) for sentence in ref_sentences]],
            smooth_method="none",
            tokenize="none",
            force=True,
            use_effective_order=True
        )
        logger.debug(f"BLEU (breaks={with_breaks}): {result.score:.4f}")
        return min(max(float(result.score), 0.0), 100.0)

    def count_blocks(self, sentences: Corpus) -> int:
        return sum(len(blocks_from_annotated(sentence)) for sentence in corpus_sentences(sentences))

    def block_conforms(self, block: Sequence[Sequence[str]], constraints: Constraints) -> bool:
        if len(block) > constraints.max_lines_per_block:
            return False
        return all(char_count(line) <= constraints.max_chars_per_line for line in block)

    def cpl_conformity(self, sentences: Corpus, constraints: Optional[Constraints] = None) -> float:
        """Percentage of blocks whose every line fits and whose line count fits."""
        constraints = constraints or self.settings.default_constraints()
        blocks = [block for sentence in corpus_sentences(sentences) for block in blocks_from_annotated(sentence)]
        if not blocks:
            raise MetricError("no sentences")
        conforming = sum(1 for block in blocks if self.block_conforms(block, constraints))
        return 100.0 * conforming / len(blocks)

    def cps_conformity(
        self,
        sentences: Corpus,
        durations: Durations,
        constraints: Optional[Constraints] = None
    ) -> float:
        """Percentage of sentences read at no more than max_chars_per_second."""
        constraints = constraints or self.settings.default_constraints()
        sentence_list = corpus_sentences(sentences)
        if not sentence_list:
            raise MetricError("no sentences")
        conforming = 0
        for sentence_id, sentence in enumerate(sentence_list):
            duration = _duration(durations, sentence_id)
            if duration <= 0:
                raise MetricError(f"Non-positive duration for sentence {sentence_id}")
            if char_count(strip_breaks(sentence)) / duration <= constraints.max_chars_per_second:
                conforming += 1
        return 100.0 * conforming / len(sentence_list)

    def mask_tokens(self, sentence: AnnotatedSentence, merge_break_types: bool = False) -> List[str]:
        """Every word becomes the mask token; breaks keep their surface."""
        masked = []
        for item in sentence.items:
            if isinstance(item, Token):
                masked.append(self.settings.MASK_TOKEN)
            elif merge_break_types:
                masked.append(MERGED_BREAK)
            else:
                masked.append(item.symbol.value)
        return masked

    def ter_br(self, hyp: AnnotatedSentence, ref: AnnotatedSentence, merge_break_types: bool = False) -> EditScript:
        """TER over the masked sentences, so only break edits are counted."""
        return ter(
            self.mask_tokens(hyp, merge_break_types),
            self.mask_tokens(ref, merge_break_types),
            max_shift_size=self.settings.MAX_SHIFT_SIZE
        )

    def corpus_ter_br(
        self,
        hyp: Corpus,
        ref: Corpus,
        merge_break_types: bool = False
    ) -> Tuple[float, List[EditScript]]:
        """Corpus TER-br ×100 (total edits / total masked reference length)
        together with the per-sentence edit scripts."""
        hyp_sentences, ref_sentences = _paired(hyp, ref)
        if not ref_sentences:
            raise MetricError("no sentences")
        scripts = [
            self.ter_br(hyp_sentence, ref_sentence, merge_break_types)
            for hyp_sentence, ref_sentence in zip(hyp_sentences, ref_sentences)
        ]
        edits = sum(script.edits for script in scripts)
        length = sum(script.reference_length for script in scripts)
        return 100.0 * edits / length, scripts

    def break_type_accuracy(self, hyp: Corpus, ref: Corpus) -> Tuple[Optional[float], int]:
        """Positional break-type agreement on comparable sentence pairs.

        Only pairs where both sides carry at least two breaks and the same
        number of breaks are kept. Returns (accuracy or None, kept pairs).
        """
        accuracies, filtered = self.joint_break_type_accuracy([hyp], ref)
        return accuracies[0], filtered

    def joint_break_type_accuracy(
        self,
        systems: Sequence[Corpus],
        ref: Corpus
    ) -> Tuple[List[Optional[float]], int]:
        """Break-type accuracy of several systems over one shared filtered set."""
        ref_sentences = corpus_sentences(ref)
        system_sentences = [_paired(system, ref_sentences)[0] for system in systems]

        selected = []
        for index, ref_sentence in enumerate(ref_sentences):
            ref_count = len(ref_sentence.breaks)
            if ref_count < 2:
                continue
            if all(len(sentences[index].breaks) == ref_count for sentences in system_sentences):
                selected.append(index)

        if not selected:
            logger.info("No sentence pairs qualify for break-type accuracy")
            return [None] * len(systems), 0

        total = sum(len(ref_sentences[index].breaks) for index in selected)
        accuracies: List[Optional[float]] = []
        for sentences in system_sentences:
            matching = sum(
                1
                for index in selected
                for hyp_break, ref_break in zip(sentences[index].breaks, ref_sentences[index].breaks)
                if hyp_break is ref_break
            )
            accuracies.append(100.0 * matching / total)
        logger.debug(f"Break-type accuracy over {len(selected)} pairs: {accuracies}")
        return accuracies, len(selected)


# Create singleton instance
metrics_service = MetricsService()
