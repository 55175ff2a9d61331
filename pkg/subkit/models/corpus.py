# subkit/models/corpus.py

from pydantic import BaseModel, Field, ConfigDict
from typing import Dict, List, Literal
from .models import AnnotatedSentence, SentenceDuration, SubtitleBlock, TimedWord


class CorpusFile(BaseModel):
    """An annotated corpus, one sentence per input line.

    Warnings collect the repairs made by lenient parsing so that they
    can be carried into reports.
    """
    model_config = ConfigDict(frozen=True)

    sentences: List[AnnotatedSentence] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    def __len__(self) -> int:
        return len(self.sentences)

    def __getitem__(self, index: int) -> AnnotatedSentence:
        return self.sentences[index]


class WordTimingFile(BaseModel):
    """Word-level timings grouped by 0-based sentence id."""
    model_config = ConfigDict(frozen=True)

    words: Dict[int, List[TimedWord]] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)

    def for_sentence(self, sentence_id: int) -> List[TimedWord]:
        return self.words.get(sentence_id, [])

    @property
    def record_count(self) -> int:
        return sum(len(words) for words in self.words.values())


class SrtFile(BaseModel):
    """Parsed SRT cues in file order."""
    model_config = ConfigDict(frozen=True)

    blocks: List[SubtitleBlock] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    def __len__(self) -> int:
        return len(self.blocks)


class DurationTable(BaseModel):
    """Per-sentence durations and where they came from."""
    model_config = ConfigDict(frozen=True)

    durations: Dict[int, SentenceDuration] = Field(default_factory=dict)
    source: Literal["durations", "timings", "reading-speed"] = "durations"
    warnings: List[str] = Field(default_factory=list)

    def __contains__(self, sentence_id: int) -> bool:
        return sentence_id in self.durations

    def __getitem__(self, sentence_id: int) -> SentenceDuration:
        return self.durations[sentence_id]
