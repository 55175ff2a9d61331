# subkit/models/__init__.py

from .models import (
    AnnotatedSentence,
    Break,
    BreakSymbol,
    Constraints,
    SentenceDuration,
    SubtitleBlock,
    TimedWord,
    Token
)
from .corpus import CorpusFile, DurationTable, SrtFile, WordTimingFile
from .reports import (
    EditScript,
    MetricsReport,
    PauseAnalysisReport,
    PauseCategory,
    PauseRecord,
    PauseStats,
    SystemComparison
)
from .segmentation import SegmentationCost, SegmentationResult

__all__ = [
    'AnnotatedSentence',
    'Break',
    'BreakSymbol',
    'Constraints',
    'SentenceDuration',
    'SubtitleBlock',
    'TimedWord',
    'Token',
    'CorpusFile',
    'DurationTable',
    'SrtFile',
    'WordTimingFile',
    'EditScript',
    'MetricsReport',
    'PauseAnalysisReport',
    'PauseCategory',
    'PauseRecord',
    'PauseStats',
    'SystemComparison',
    'SegmentationCost',
    'SegmentationResult'
]
