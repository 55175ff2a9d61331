# subkit/services/corpus_parser.py

from typing import List, Optional, Sequence, Tuple, Union
import logging
import re
from pydantic import ValidationError
from subkit.core.exceptions import FormatError
from subkit.core.files import UTF8_BOM
from subkit.models.corpus import CorpusFile
from subkit.models.models import AnnotatedSentence, Break, BreakSymbol, Token

logger = logging.getLogger(__name__)

MARKUP_PATTERN = re.compile(r"^<[^<>\s]*>$")
LINE_SPLIT = re.compile(r"\r?\n")


class CorpusParser:
    """Reads and writes break-annotated corpora, one sentence per line."""

    def split_lines(self, text: str) -> List[str]:
        """Split on newlines; a final newline does not open an empty line."""
        if text.startswith(UTF8_BOM):
            text = text[1:]
        if not text:
            return []
        lines = LINE_SPLIT.split(text)
        if lines and lines[-1] == "":
            lines.pop()
        return lines

    def parse_sentence(
        self,
        line: str,
        strict: bool = True,
        line_number: Optional[int] = None
    ) -> Tuple[AnnotatedSentence, List[str]]:
        """Parse one annotated line.

        Returns the sentence and the warnings produced by lenient repairs.
        Strict mode rejects leading and consecutive breaks; lenient mode
        drops leading breaks and collapses runs to the strongest symbol.

        Args:
            line: One corpus line without its newline
            strict: Reject instead of repair
            line_number: 1-based line number for error messages

        Returns:
            Tuple of the sentence and the repair warnings

        Raises:
            FormatError: If the line is empty, holds unknown markup or
                breaks the sentence invariants
        """
        warnings: List[str] = []
        where = f"line {line_number}: " if line_number is not None else ""
        raw = line.split()
        if not raw:
            raise FormatError("empty line", line=line_number)

        items: List[Union[Token, Break]] = []
        raw_token_count = 0
        for surface in raw:
            if surface in (BreakSymbol.LINE.value, BreakSymbol.BLOCK.value):
                symbol = BreakSymbol(surface)
                if not items:
                    if strict:
                        raise FormatError("sentence begins with break", line=line_number)
                    warnings.append(f"{where}dropped leading {surface}")
                    continue
                previous = items[-1]
                if isinstance(previous, Break):
                    if strict:
                        raise FormatError(
                            f"consecutive break symbols {previous.symbol.value} {surface}",
                            line=line_number
                        )
                    stronger = BreakSymbol.BLOCK if BreakSymbol.BLOCK in (previous.symbol, symbol) else BreakSymbol.LINE
                    items[-1] = Break(symbol=stronger)
                    warnings.append(
                        f"{where}collapsed {previous.symbol.value} {surface} into {stronger.value}"
                    )
                    continue
                items.append(Break(symbol=symbol))
            elif MARKUP_PATTERN.match(surface):
                raise FormatError(f"unknown markup token {surface}", line=line_number)
            else:
                raw_token_count += 1
                items.append(Token(text=surface))

        if raw_token_count == 0:
            raise FormatError("sentence contains only break symbols", line=line_number)

        try:
            sentence = AnnotatedSentence(items=tuple(items))
        except ValidationError as e:
            raise FormatError(f"invalid sentence: {e.errors()[0]['msg']}", line=line_number)

        if len(sentence.tokens) != raw_token_count:
            raise FormatError(
                f"token count changed while parsing ({raw_token_count} in, {len(sentence.tokens)} out)",
                line=line_number
            )
        return sentence, warnings

    def parse_annotated_corpus(self, text: str, strict: bool = True, source: Optional[str] = None) -> CorpusFile:
        """
        Parse a whole corpus, one sentence per line.

        Args:
            text: Corpus text, BOM and CRLF tolerated
            strict: Reject instead of repair
            source: File name used in error messages

        Returns:
            CorpusFile with the sentences and the lenient-mode warnings

        Raises:
            FormatError: If a line cannot be parsed; names the 1-based line
        """
        sentences: List[AnnotatedSentence] = []
        warnings: List[str] = []
        try:
            for number, line in enumerate(self.split_lines(text), 1):
                if not line.strip():
                    if strict:
                        raise FormatError("empty line", line=number)
                    warnings.append(f"line {number}: skipped empty line")
                    continue
                sentence, line_warnings = self.parse_sentence(line, strict=strict, line_number=number)
                sentences.append(sentence)
                warnings.extend(line_warnings)
        except FormatError as e:
            logger.error(f"Error parsing annotated corpus: {e}")
            raise e.with_source(source) if source else e

        for warning in warnings:
            logger.warning(f"{source or 'corpus'}: {warning}")
        logger.info(f"Parsed {len(sentences)} annotated sentences")
        return CorpusFile(sentences=sentences, warnings=warnings)

    def emit_annotated_corpus(self, sentences: Sequence[AnnotatedSentence]) -> str:
        """One sentence per line, items separated by single spaces."""
        return "".join(f"{sentence}\n" for sentence in sentences)


# Create singleton instance
corpus_parser = CorpusParser()
