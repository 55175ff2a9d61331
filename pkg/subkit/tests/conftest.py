import logging
import os
from typing import Callable, List, Tuple

import pytest

from subkit.core.config import get_settings
from subkit.models.models import AnnotatedSentence, TimedWord

# Set test environment
os.environ["SUBKIT_ENV"] = "test"

ANNOTATED_EXAMPLE = (
    "This kind of harassment keeps women <eol> from accessing the internet -- <eob> "
    "essentially, knowledge. <eob>"
)

PLAIN_EXAMPLE = "This kind of harassment keeps women from accessing the internet -- essentially, knowledge."

SRT_EXAMPLE = (
    "10\n"
    "00:00:31,066 --> 00:00:34,390\n"
    "This kind of harassment keeps women\n"
    "from accessing the internet --\n"
    "\n"
    "11\n"
    "00:00:34,414 --> 00:00:36,191\n"
    "essentially, knowledge.\n"
)

# Aligner output for the example: one entry per spoken word, "--" is silent
EXAMPLE_WORDS: List[Tuple[str, float, float]] = [
    ("This", 31.066, 31.250),
    ("kind", 31.270, 31.480),
    ("of", 31.500, 31.560),
    ("harassment", 31.600, 32.250),
    ("keeps", 32.300, 32.600),
    ("women", 32.650, 33.050),
    ("from", 33.100, 33.300),
    ("accessing", 33.320, 33.800),
    ("the", 33.820, 33.900),
    ("internet", 33.950, 34.390),
    ("essentially", 34.414, 35.300),
    ("knowledge", 35.500, 36.191),
]


def timings_tsv(words: List[Tuple[str, float, float]], sentence_id: int = 0) -> str:
    return "".join(f"{sentence_id}\t{word}\t{start:.3f}\t{end:.3f}\n" for word, start, end in words)


def _words(sentence_id: int) -> List[str]:
    return [f"s{sentence_id:02d}{letter}" for letter in "abcdefg"]


def evaluation_corpora() -> Tuple[str, str, str]:
    """Hypothesis, reference and durations texts of a 20-sentence corpus.

    Sentences 0-9 are identical on both sides; 10-14 put <eob> where the
    reference has <eol>; 15-19 keep only the final <eob>. Every sentence
    has the same seven words on both sides and is 34 characters long.
    """
    hyp_lines, ref_lines, durations = [], [], []
    for sentence_id in range(20):
        a, b, c, d, e, f, g = _words(sentence_id)
        ref = f"{a} {b} {c} <eol> {d} {e} <eob> {f} {g} <eob>"
        if sentence_id < 10:
            hyp = ref
        elif sentence_id < 15:
            hyp = f"{a} {b} {c} <eob> {d} {e} <eob> {f} {g} <eob>"
        else:
            hyp = f"{a} {b} {c} {d} {e} {f} {g} <eob>"
        hyp_lines.append(hyp)
        ref_lines.append(ref)
        durations.append(f"{sentence_id}\t{2.0 if sentence_id < 10 else 1.0}")
    return "\n".join(hyp_lines) + "\n", "\n".join(ref_lines) + "\n", "\n".join(durations) + "\n"


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached per process; drop the cache around every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def restore_logging():
    """setup_logging replaces root handlers; put the originals back."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def example_sentence() -> AnnotatedSentence:
    return AnnotatedSentence.from_sequence(ANNOTATED_EXAMPLE.split())


@pytest.fixture
def example_words() -> List[TimedWord]:
    return [TimedWord(surface=word, start_time=start, end_time=end) for word, start, end in EXAMPLE_WORDS]


@pytest.fixture
def write_file(tmp_path) -> Callable[[str, str], str]:
    """Write text under tmp_path and return the path as a string."""
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8", newline="")
        return str(path)
    return _write
