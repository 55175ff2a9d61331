# subkit/cli/commands/segment.py

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from subkit.cli.options import run_config_from_args, run_config_options, write_text
from subkit.core.config import get_settings
from subkit.core.exceptions import AlignmentError, FormatError, UsageError
from subkit.core.files import read_text, write_atomic
from subkit.models.models import AnnotatedSentence
from subkit.services.annotation import ensure_final_eob
from subkit.services.conversion import conversion_service
from subkit.services.corpus_parser import corpus_parser
from subkit.services.metrics import metrics_service
from subkit.services.prosody import gap_pauses
from subkit.services.segmenter import segment_with_report
from subkit.services.srt_processor import srt_processor
from subkit.services.timing_parser import timing_parser

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "segment",
        parents=[run_config_options()],
        help="Insert <eol>/<eob> into sentences and time the resulting subtitles"
    )
    parser.add_argument("--input", type=Path, required=True, help="Plain or annotated text, one sentence per line")
    parser.add_argument("--timings", type=Path, help="Word timings: pauses for segmentation, times for SRT")
    parser.add_argument("--durations", type=Path, help="Sentence durations for proportional timing")
    parser.add_argument("--strategy", choices=["dp", "alternating"], default="dp",
                        help="Cost-minimizing segmentation or the alternating two-line baseline")
    parser.add_argument("--resegment", action="store_true",
                        help="Strip breaks from annotated input and segment it again")
    parser.add_argument("--start-index", type=int, default=1, help="Index of the first SRT block")
    parser.add_argument("--min-gap", type=float, default=None, help="Seconds between consecutive blocks")
    parser.add_argument("--srt-out", type=Path, help="Write timed subtitles as SRT")
    parser.add_argument("--annotated-out", type=Path, help="Write the annotated corpus (stdout when no output is given)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = run_config_from_args(args, outputs={"srt": args.srt_out, "annotated": args.annotated_out})
    if args.start_index < 1:
        raise UsageError(f"--start-index must be positive, got {args.start_index}")
    min_gap = args.min_gap if args.min_gap is not None else get_settings().MIN_BLOCK_GAP

    corpus = corpus_parser.parse_annotated_corpus(read_text(args.input), strict=config.strict, source=str(args.input))
    if not corpus.sentences:
        raise FormatError("input contains no sentences", source=str(args.input))

    timings = None
    if args.timings:
        timings = timing_parser.parse_word_timings(read_text(args.timings), source=str(args.timings))
    durations = None
    if args.durations:
        durations = timing_parser.parse_durations(read_text(args.durations), source=str(args.durations))

    sentences: List[AnnotatedSentence] = []
    forced = 0
    overlong = 0
    for sentence_id, sentence in enumerate(corpus.sentences):
        if sentence.breaks and not args.resegment:
            sentences.append(ensure_final_eob(sentence))
            continue
        pauses: Optional[List[float]] = None
        if timings is not None:
            try:
                pauses = gap_pauses(sentence, timings.for_sentence(sentence_id))
            except AlignmentError as e:
                if config.strict:
                    raise AlignmentError(f"sentence {sentence_id}: {e}")
                logger.warning(f"sentence {sentence_id}: {e}; segmenting without pauses")
        result = segment_with_report(sentence.tokens, config.constraints, pauses, config.cost, args.strategy)
        sentences.append(result.sentence)
        forced += result.forced_eobs
        overlong += len(result.overlong_blocks)

    mode = "none"
    if args.srt_out:
        timed = conversion_service.time_corpus(
            sentences,
            config.constraints,
            timings=timings,
            durations=durations,
            start_index=args.start_index,
            min_gap=min_gap,
            strict=config.strict
        )
        write_atomic(args.srt_out, srt_processor.emit_srt(timed.blocks))
        mode = timed.mode if timed.mode in ("alignment", "sidecar") else f"proportional ({timed.mode})"
    annotated = corpus_parser.emit_annotated_corpus(sentences)
    if args.annotated_out or not args.srt_out:
        write_text(annotated, args.annotated_out)

    cpl = metrics_service.cpl_conformity(sentences, config.constraints)
    sys.stderr.write(
        f"segmented {len(sentences)} sentences: {metrics_service.count_blocks(sentences)} blocks, "
        f"CPL {cpl:.1f}%, {forced} forced <eob>, {overlong} over-long blocks, timing: {mode}\n"
    )
    return 0
