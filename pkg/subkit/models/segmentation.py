# subkit/models/segmentation.py

from pydantic import BaseModel, Field, ConfigDict, field_validator
from typing import List, Tuple
from .models import AnnotatedSentence

# Articles, prepositions and conjunctions after which a break splits a
# syntactic unit. English, French and German, the corpus languages.
DEFAULT_FUNCTION_WORDS: Tuple[str, ...] = (
    "a", "an", "the", "and", "or", "but", "of", "to", "in", "on", "at", "for",
    "from", "with", "by", "as", "that", "if",
    "le", "la", "les", "un", "une", "des", "du", "de", "et", "ou", "mais",
    "comment", "que", "qui", "dans", "sur", "pour", "par", "avec", "à", "au", "aux",
    "der", "die", "das", "ein", "eine", "und", "oder", "aber", "von", "zu",
    "im", "mit", "auf", "für", "dass", "wie"
)


class SegmentationCost(BaseModel):
    """Soft-cost weights of the segmenter.

    Hard limits (characters per line, lines per block, forced `<eob>` at
    long pauses) are not weights; they come from Constraints.
    """
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "w_balance": 1.0,
                "w_pause_miss": 50.0,
                "w_break_density": 5.0,
                "w_short_line": 3.0,
                "w_function_word": 10.0,
                "w_block_break": 8.0,
                "w_leading_punctuation": 1000.0
            }
        }
    )

    w_balance: float = Field(default=1.0, ge=0.0, description="Per character of line-length imbalance")
    w_pause_miss: float = Field(default=50.0, ge=0.0, description="Long pause left without <eob> (soft mode)")
    w_break_density: float = Field(default=5.0, ge=0.0, description="Per inserted break")
    w_short_line: float = Field(default=3.0, ge=0.0, description="Per line shorter than min_line_chars")
    w_function_word: float = Field(default=10.0, ge=0.0, description="Break right after a function word")
    w_block_break: float = Field(default=8.0, ge=0.0, description="Extra cost of a non-final <eob>")
    w_leading_punctuation: float = Field(
        default=1000.0,
        ge=0.0,
        description="Break in front of a punctuation-only token, which would open the next line"
    )
    min_line_chars: int = Field(default=12, ge=0)
    hard_pause_breaks: bool = Field(default=True, description="Pauses above threshold force <eob>")
    eol_pause_bonus: float = Field(default=0.0, ge=0.0, description="Reward for <eol> at a medium pause")
    eol_pause_min: float = Field(default=0.074, ge=0.0)
    function_words: Tuple[str, ...] = DEFAULT_FUNCTION_WORDS

    @field_validator("function_words", mode="before")
    def split_function_words(cls, v):
        """Config files give the stop-list as a comma separated string."""
        if isinstance(v, str):
            return tuple(word.strip().lower() for word in v.split(",") if word.strip())
        return tuple(word.lower() for word in v)


class SegmentationResult(BaseModel):
    """Segmented sentence plus the bookkeeping reported by the CLI."""
    model_config = ConfigDict(frozen=True)

    sentence: AnnotatedSentence
    cost: float
    forced_eobs: int = 0
    overlong_blocks: List[int] = Field(default_factory=list)
