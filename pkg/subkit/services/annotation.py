# subkit/services/annotation.py

from typing import List, Sequence, Union
import logging
from subkit.core.exceptions import StructureError
from subkit.models.models import (
    AnnotatedSentence,
    Break,
    BreakSymbol,
    Line,
    Token,
    UntimedBlock
)

logger = logging.getLogger(__name__)


def blocks_from_annotated(sentence: AnnotatedSentence) -> List[UntimedBlock]:
    """Split a sentence into blocks at `<eob>` and into lines at `<eol>`.

    A trailing `<eob>` closes the last block without opening an empty one.
    """
    blocks: List[UntimedBlock] = []
    block: UntimedBlock = []
    line: Line = []
    for item in sentence.items:
        if isinstance(item, Token):
            line.append(item.text)
            continue
        block.append(line)
        line = []
        if item.symbol is BreakSymbol.BLOCK:
            blocks.append(block)
            block = []
    if line:
        block.append(line)
    if block:
        blocks.append(block)
    return blocks


def annotated_from_blocks(blocks: Sequence[UntimedBlock]) -> AnnotatedSentence:
    """Inverse of blocks_from_annotated; every block is closed by `<eob>`."""
    if not blocks:
        raise StructureError("No blocks to annotate")
    items: List[Union[Token, Break]] = []
    for block_number, block in enumerate(blocks, 1):
        if not block:
            raise StructureError(f"Block {block_number} has no lines")
        for line_number, line in enumerate(block, 1):
            if not line:
                raise StructureError(f"Block {block_number}, line {line_number} has no tokens")
            if line_number > 1:
                items.append(Break(symbol=BreakSymbol.LINE))
            items.extend(Token(text=token) for token in line)
        items.append(Break(symbol=BreakSymbol.BLOCK))
    return AnnotatedSentence(items=tuple(items))


def strip_breaks(sentence: AnnotatedSentence) -> List[str]:
    """Tokens of the sentence without any break symbol."""
    return sentence.tokens


def ensure_final_eob(sentence: AnnotatedSentence) -> AnnotatedSentence:
    """End the sentence with `<eob>`, turning a final `<eol>` into one."""
    items = list(sentence.items)
    last = items[-1]
    if isinstance(last, Break):
        if last.symbol is BreakSymbol.BLOCK:
            return sentence
        items[-1] = Break(symbol=BreakSymbol.BLOCK)
    else:
        items.append(Break(symbol=BreakSymbol.BLOCK))
    return AnnotatedSentence(items=tuple(items))


def strip_final_eob(sentence: AnnotatedSentence) -> AnnotatedSentence:
    """Drop a sentence-final `<eob>`, the convention of hand-made examples."""
    last = sentence.items[-1]
    if isinstance(last, Break) and last.symbol is BreakSymbol.BLOCK:
        return AnnotatedSentence(items=sentence.items[:-1])
    return sentence


def normalize_sentence(
    sentence: AnnotatedSentence,
    normalize_final_eob: bool = False,
    strip_final: bool = False
) -> AnnotatedSentence:
    if normalize_final_eob:
        sentence = ensure_final_eob(sentence)
    if strip_final:
        sentence = strip_final_eob(sentence)
    return sentence


def line_text(line: Sequence[str]) -> str:
    """Displayed text of a line: tokens joined by single spaces."""
    return " ".join(line)


def char_count(tokens: Sequence[str]) -> int:
    """Characters on screen, counting Unicode code points and inner spaces."""
    if not tokens:
        return 0
    return sum(len(token) for token in tokens) + len(tokens) - 1


def sentence_text(sentence: AnnotatedSentence) -> str:
    """Break-stripped, space-joined text used for reading-speed checks."""
    return line_text(strip_breaks(sentence))
