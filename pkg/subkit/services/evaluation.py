# subkit/services/evaluation.py

from typing import List, Optional, Sequence
import logging
from subkit.core.config import RunConfig
from subkit.core.exceptions import CorpusMismatchError
from subkit.models.corpus import CorpusFile, DurationTable
from subkit.models.models import AnnotatedSentence
from subkit.models.reports import MetricsReport, ReportCounts, SystemComparison
from subkit.services.annotation import normalize_sentence
from subkit.services.metrics import Corpus, MetricsService, corpus_sentences, metrics_service

logger = logging.getLogger(__name__)

DURATION_SOURCES = {
    "timings": "cps durations derived from word timings (last end - first start)",
    "reading-speed": "cps durations estimated from reading speed"
}


class EvaluationService:
    """Assembles every metric of one hypothesis corpus into a report."""

    def __init__(self, metrics: Optional[MetricsService] = None):
        self.metrics = metrics or metrics_service

    def _normalized(self, corpus: Corpus, config: RunConfig) -> List[AnnotatedSentence]:
        return [
            normalize_sentence(sentence, config.normalize_final_eob, config.strip_final_eob)
            for sentence in corpus_sentences(corpus)
        ]

    def _input_warnings(self, corpus: Corpus, label: str) -> List[str]:
        if isinstance(corpus, CorpusFile):
            return [f"{label}: {warning}" for warning in corpus.warnings]
        return []

    def evaluate(
        self,
        hyp: Corpus,
        ref: Corpus,
        durations: Optional[DurationTable] = None,
        config: Optional[RunConfig] = None
    ) -> MetricsReport:
        """Score a hypothesis corpus against its reference.

        CPL and CPS describe the hypothesis subtitles. Without durations
        the report carries no CPS value and says so in its warnings.

        Args:
            hyp: Hypothesis corpus
            ref: Reference corpus
            durations: Sentence durations for CPS
            config: Limits and normalization flags

        Returns:
            MetricsReport with every metric and the collected warnings

        Raises:
            CorpusMismatchError: If the corpora differ in size
            MetricError: If a metric is undefined for the input
        """
        config = config or RunConfig()
        hyp_sentences = self._normalized(hyp, config)
        ref_sentences = self._normalized(ref, config)
        if len(hyp_sentences) != len(ref_sentences):
            raise CorpusMismatchError(
                f"Sentence count mismatch: {len(hyp_sentences)} hypothesis vs {len(ref_sentences)} reference"
            )
        logger.info(f"Evaluating {len(hyp_sentences)} sentence pairs")

        warnings = self._input_warnings(hyp, "hyp") + self._input_warnings(ref, "ref")
        cps = None
        if durations is None:
            warnings.append("no durations given: cps omitted")
            logger.warning("No durations given, CPS conformity omitted")
        else:
            warnings.extend(durations.warnings)
            if durations.source in DURATION_SOURCES:
                warnings.append(DURATION_SOURCES[durations.source])
            cps = self.metrics.cps_conformity(hyp_sentences, durations, config.constraints)

        ter_br, _ = self.metrics.corpus_ter_br(hyp_sentences, ref_sentences, config.merge_break_types)
        accuracy, filtered = self.metrics.break_type_accuracy(hyp_sentences, ref_sentences)

        report = MetricsReport(
            bleu=self.metrics.bleu(hyp_sentences, ref_sentences, with_breaks=True),
            bleu_nob=self.metrics.bleu(hyp_sentences, ref_sentences, with_breaks=False),
            cpl=self.metrics.cpl_conformity(hyp_sentences, config.constraints),
            cps=cps,
            ter_br=ter_br,
            break_acc=accuracy,
            counts=ReportCounts(
                sentences=len(hyp_sentences),
                blocks=self.metrics.count_blocks(hyp_sentences),
                filtered_pairs=filtered
            ),
            warnings=warnings
        )
        logger.info(
            f"BLEU {report.bleu:.2f}, BLEU-nob {report.bleu_nob:.2f}, "
            f"CPL {report.cpl_conformity:.2f}, TER-br {report.ter_br:.2f}"
        )
        return report

    def evaluate_systems(
        self,
        systems: Sequence[Corpus],
        ref: Corpus,
        durations: Optional[DurationTable] = None,
        config: Optional[RunConfig] = None
    ) -> SystemComparison:
        """One report per system plus break accuracy on their joint filtered set."""
        config = config or RunConfig()
        reports = [self.evaluate(system, ref, durations, config) for system in systems]
        accuracies, filtered = self.metrics.joint_break_type_accuracy(
            [self._normalized(system, config) for system in systems],
            self._normalized(ref, config)
        )
        return SystemComparison(
            reports=reports,
            joint_break_accuracy=accuracies,
            joint_filtered_pairs=filtered
        )


# Create singleton instance
evaluation_service = EvaluationService()


def evaluate(
    hyp: Corpus,
    ref: Corpus,
    durations: Optional[DurationTable] = None,
    config: Optional[RunConfig] = None
) -> MetricsReport:
    return evaluation_service.evaluate(hyp, ref, durations, config)
