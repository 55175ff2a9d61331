# subkit/services/__init__.py

from .corpus_parser import corpus_parser
from .srt_processor import srt_processor
from .timing_parser import timing_parser
from .metrics import metrics_service
from .evaluation import evaluation_service, evaluate
from .conversion import conversion_service
from .segmenter import assign_times, segment, segment_with_report
from .prosody import analyze_corpus, compute_pauses, derive_eob_threshold, pause_stats

__all__ = [
    'corpus_parser',
    'srt_processor',
    'timing_parser',
    'metrics_service',
    'evaluation_service',
    'evaluate',
    'conversion_service',
    'assign_times',
    'segment',
    'segment_with_report',
    'analyze_corpus',
    'compute_pauses',
    'derive_eob_threshold',
    'pause_stats'
]
