# subkit/models/models.py

from pydantic import BaseModel, Field, ConfigDict, field_validator, model_validator
from typing import List, Literal, Union, Annotated, Sequence, Tuple
from enum import Enum
import logging

logger = logging.getLogger(__name__)


class BreakSymbol(str, Enum):
    """Subtitle break markers as they appear in annotated text."""
    LINE = "<eol>"
    BLOCK = "<eob>"


BREAK_SURFACES = frozenset(symbol.value for symbol in BreakSymbol)


class Token(BaseModel):
    """A single whitespace-free word or punctuation token."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["token"] = "token"
    text: str = Field(..., min_length=1)

    @field_validator("text")
    def validate_text(cls, v):
        """Tokens never contain whitespace and never spell a break symbol."""
        if any(ch.isspace() for ch in v):
            raise ValueError(f"Token contains whitespace: {v!r}")
        if v in BREAK_SURFACES:
            raise ValueError(f"Token may not be a break symbol: {v}")
        return v


class Break(BaseModel):
    """A line or block break between two tokens."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["break"] = "break"
    symbol: BreakSymbol


Item = Annotated[Union[Token, Break], Field(discriminator="kind")]


class AnnotatedSentence(BaseModel):
    """Token sequence interleaved with `<eol>`/`<eob>` break symbols.

    The invariants hold for every instance: at least one token, no
    leading break, no two adjacent breaks. Parsers that accept sloppier
    input repair it before building the sentence.
    """
    model_config = ConfigDict(frozen=True)

    items: Tuple[Item, ...]

    @model_validator(mode="after")
    def check_structure(self):
        if not any(isinstance(item, Token) for item in self.items):
            raise ValueError("Sentence contains no tokens")
        if isinstance(self.items[0], Break):
            raise ValueError("Sentence begins with break")
        for previous, current in zip(self.items, self.items[1:]):
            if isinstance(previous, Break) and isinstance(current, Break):
                raise ValueError("Sentence contains consecutive break symbols")
        return self

    @classmethod
    def from_sequence(cls, sequence: Sequence[Union[str, BreakSymbol]]) -> "AnnotatedSentence":
        """Build a sentence from plain strings, break surfaces becoming breaks."""
        items: List[Union[Token, Break]] = []
        for element in sequence:
            if isinstance(element, BreakSymbol) or element in BREAK_SURFACES:
                items.append(Break(symbol=BreakSymbol(element)))
            else:
                items.append(Token(text=element))
        return cls(items=tuple(items))

    @property
    def tokens(self) -> List[str]:
        return [item.text for item in self.items if isinstance(item, Token)]

    @property
    def breaks(self) -> List[BreakSymbol]:
        return [item.symbol for item in self.items if isinstance(item, Break)]

    @property
    def surfaces(self) -> List[str]:
        """Every item as the string written in a corpus file."""
        return [
            item.text if isinstance(item, Token) else item.symbol.value
            for item in self.items
        ]

    def __str__(self) -> str:
        return " ".join(self.surfaces)


# Untimed subtitle structure: blocks of lines of token strings.
Line = List[str]
UntimedBlock = List[Line]


class TimedWord(BaseModel):
    """A word with its aligned start and end time in seconds."""
    model_config = ConfigDict(frozen=True)

    surface: str
    start_time: float = Field(..., ge=0.0)
    end_time: float = Field(..., ge=0.0)

    @model_validator(mode="after")
    def check_order(self):
        if self.end_time < self.start_time:
            raise ValueError(
                f"end time {self.end_time} before start time {self.start_time}"
            )
        return self

    def shifted(self, offset: float) -> "TimedWord":
        return TimedWord(
            surface=self.surface,
            start_time=self.start_time + offset,
            end_time=self.end_time + offset
        )


class SentenceDuration(BaseModel):
    """Spoken duration of one sentence, the CPS denominator."""
    model_config = ConfigDict(frozen=True)

    duration: float = Field(..., gt=0.0)


class SubtitleBlock(BaseModel):
    """One SRT cue: index, in/out time and the displayed lines."""
    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=1)
    start: float = Field(..., ge=0.0)
    end: float
    lines: Tuple[str, ...] = Field(..., min_length=1)

    @field_validator("lines")
    def validate_lines(cls, v):
        for line in v:
            if not line.strip():
                raise ValueError("Subtitle line is empty")
            if "\n" in line or "\r" in line:
                raise ValueError("Subtitle line contains a line break")
        return v

    @model_validator(mode="after")
    def check_times(self):
        if self.end <= self.start:
            raise ValueError(f"end {self.end} is not after start {self.start}")
        return self


class Constraints(BaseModel):
    """Spatial, temporal and prosodic subtitling limits."""
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "max_chars_per_line": 42,
                "max_chars_per_second": 21.0,
                "max_lines_per_block": 2,
                "eob_pause_threshold": 0.37
            }
        }
    )

    max_chars_per_line: int = Field(default=42, gt=0)
    max_chars_per_second: float = Field(default=21.0, gt=0.0)
    max_lines_per_block: int = Field(default=2, gt=0)
    eob_pause_threshold: float = Field(default=0.37, gt=0.0)
