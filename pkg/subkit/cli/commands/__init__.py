# subkit/cli/commands/__init__.py

from . import analyze, convert, evaluate, segment

__all__ = [
    'analyze',
    'convert',
    'evaluate',
    'segment'
]
