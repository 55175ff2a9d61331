# subkit/core/__init__.py

from .config import RunConfig, Settings, build_run_config, get_settings
from .exceptions import (
    AlignmentError,
    CorpusMismatchError,
    FormatError,
    MetricError,
    ProsodyError,
    SegmentationError,
    StructureError,
    SubkitError,
    TimingError,
    UsageError
)

__all__ = [
    'RunConfig',
    'Settings',
    'build_run_config',
    'get_settings',
    'AlignmentError',
    'CorpusMismatchError',
    'FormatError',
    'MetricError',
    'ProsodyError',
    'SegmentationError',
    'StructureError',
    'SubkitError',
    'TimingError',
    'UsageError'
]
