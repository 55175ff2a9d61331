# subkit/__init__.py

"""Subtitle-oriented speech translation toolkit: break-annotated corpora,
SRT files, subtitle metrics, pause analysis and segmentation."""

__version__ = "1.0.0"
