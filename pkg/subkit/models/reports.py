# subkit/models/reports.py

from pydantic import BaseModel, Field, ConfigDict, model_validator
from typing import Any, Dict, List, Optional
from enum import Enum
import logging

logger = logging.getLogger(__name__)


class EditScript(BaseModel):
    """Edit counts that turn a hypothesis into its reference."""
    model_config = ConfigDict(frozen=True)

    insertions: int = Field(default=0, ge=0)
    deletions: int = Field(default=0, ge=0)
    substitutions: int = Field(default=0, ge=0)
    shifts: int = Field(default=0, ge=0)
    reference_length: int = Field(..., gt=0)

    @property
    def edits(self) -> int:
        return self.insertions + self.deletions + self.substitutions + self.shifts

    @property
    def score(self) -> float:
        """TER as a fraction of the reference length."""
        return self.edits / self.reference_length


class ReportCounts(BaseModel):
    sentences: int = Field(default=0, ge=0)
    blocks: int = Field(default=0, ge=0)
    filtered_pairs: int = Field(default=0, ge=0)


class MetricsReport(BaseModel):
    """One results-table row: quality, conformity and segmentation scores.

    Serialized with aliases, the key order is fixed by field order:
    bleu, bleu_nob, cpl, cps, ter_br, break_acc, counts, warnings.
    """
    model_config = ConfigDict(
        populate_by_name=True,
        json_schema_extra={
            "example": {
                "bleu": 30.62,
                "bleu_nob": 28.86,
                "cpl": 91.0,
                "cps": 68.0,
                "ter_br": 18.0,
                "break_acc": 89.0,
                "counts": {"sentences": 542, "blocks": 1213, "filtered_pairs": 137},
                "warnings": []
            }
        }
    )

    bleu: float = Field(..., ge=0.0, le=100.0)
    bleu_nob: float = Field(..., ge=0.0, le=100.0)
    cpl_conformity: float = Field(..., alias="cpl", ge=0.0, le=100.0)
    cps_conformity: Optional[float] = Field(default=None, alias="cps", ge=0.0, le=100.0)
    # TER grows past 100 when the hypothesis is much longer than the reference
    ter_br: float = Field(..., ge=0.0)
    break_accuracy: Optional[float] = Field(default=None, alias="break_acc", ge=0.0, le=100.0)
    counts: ReportCounts = Field(default_factory=ReportCounts)
    warnings: List[str] = Field(default_factory=list)

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True, mode="json")


class PauseCategory(str, Enum):
    """What follows a word in the annotated text."""
    NONE = "none"
    LINE = "<eol>"
    BLOCK = "<eob>"


class PauseRecord(BaseModel):
    """Silence between a word and the next one, with its break category."""
    model_config = ConfigDict(frozen=True)

    after_word_index: int = Field(..., ge=0)
    gap: float = Field(..., ge=0.0)
    category: PauseCategory
    clamped: bool = False


class CategoryStats(BaseModel):
    count: int = Field(default=0, ge=0)
    mean: Optional[float] = Field(default=None, ge=0.0)
    stdev: Optional[float] = Field(default=None, ge=0.0)

    @model_validator(mode="after")
    def check_consistency(self):
        if self.count == 0 and (self.mean is not None or self.stdev is not None):
            raise ValueError("Empty category cannot have mean or stdev")
        if self.count == 1 and self.stdev not in (None, 0.0):
            raise ValueError("Single-record category must have stdev 0")
        return self


class PauseStats(BaseModel):
    """Per-category pause count, mean and population standard deviation."""

    categories: Dict[PauseCategory, CategoryStats] = Field(
        default_factory=lambda: {category: CategoryStats() for category in PauseCategory}
    )

    def get(self, category: PauseCategory) -> CategoryStats:
        return self.categories.get(category, CategoryStats())

    @property
    def total(self) -> int:
        return sum(stats.count for stats in self.categories.values())

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            category.value: self.get(category).model_dump()
            for category in PauseCategory
        }


class PauseAnalysisReport(BaseModel):
    """Corpus-level pause analysis, the pause-statistics table."""

    stats: PauseStats
    threshold: Optional[float] = None
    sentences: int = 0
    skipped: int = 0
    clamped: int = 0
    records: List[PauseRecord] = Field(default_factory=list, exclude=True)
    sentence_ids: List[int] = Field(default_factory=list, exclude=True)
    warnings: List[str] = Field(default_factory=list)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "stats": self.stats.to_json_dict(),
            "threshold": self.threshold,
            "sentences": self.sentences,
            "skipped": self.skipped,
            "clamped": self.clamped,
            "warnings": list(self.warnings)
        }


class SystemComparison(BaseModel):
    """Reports for several systems scored against one reference.

    Joint break accuracy filters the sentence pairs once, over the
    reference and every system, so the accuracies share one sentence set.
    """

    reports: List[MetricsReport]
    joint_break_accuracy: List[Optional[float]]
    joint_filtered_pairs: int = Field(default=0, ge=0)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "reports": [report.to_json_dict() for report in self.reports],
            "joint_break_acc": list(self.joint_break_accuracy),
            "joint_filtered_pairs": self.joint_filtered_pairs
        }


class TokenAlignment(BaseModel):
    """Positional mapping of lexical tokens onto timed words."""
    model_config = ConfigDict(frozen=True)

    mapping: Dict[int, int] = Field(default_factory=dict, description="token index -> word index")
    warnings: List[str] = Field(default_factory=list)
