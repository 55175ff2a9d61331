# subkit/cli/commands/convert.py

import argparse
import logging
from pathlib import Path

from subkit.cli.options import envelope, run_config_from_args, run_config_options, write_json, write_text
from subkit.core.config import get_settings
from subkit.core.exceptions import UsageError
from subkit.core.files import read_text, write_atomic
from subkit.services.annotation import blocks_from_annotated, line_text, normalize_sentence
from subkit.services.conversion import conversion_service
from subkit.services.corpus_parser import corpus_parser
from subkit.services.srt_processor import srt_processor
from subkit.services.timing_parser import timing_parser

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "convert",
        parents=[run_config_options()],
        help="Convert between annotated text, SRT and a JSON block listing"
    )
    parser.add_argument("--input", type=Path, required=True)
    parser.add_argument("--from", dest="source_format", choices=["annotated", "srt"], required=True)
    parser.add_argument("--to", dest="target_format", choices=["annotated", "srt", "blocks-json"], required=True)
    parser.add_argument("-o", "--output", type=Path, help="Output file (stdout when omitted)")
    parser.add_argument("--block-timings", type=Path,
                        help="Block-timing sidecar: written by srt->annotated, read by annotated->srt")
    parser.add_argument("--timings", type=Path, help="Word timings for annotated->srt")
    parser.add_argument("--durations", type=Path, help="Sentence durations for annotated->srt")
    parser.add_argument("--group", choices=["sentence", "block"], default="sentence",
                        help="How srt->annotated groups blocks into sentences")
    parser.add_argument("--start-index", type=int, default=1, help="Index of the first SRT block")
    parser.add_argument("--min-gap", type=float, default=None, help="Seconds between consecutive blocks")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = run_config_from_args(args, outputs={"output": args.output, "block_timings": args.block_timings})
    if args.start_index < 1:
        raise UsageError(f"--start-index must be positive, got {args.start_index}")
    text = read_text(args.input)
    source = str(args.input)
    logger.info(f"Converting {source} from {args.source_format} to {args.target_format}")

    if args.source_format == "srt":
        srt = srt_processor.parse_srt(text, strict=config.strict, source=source)
        if args.target_format == "srt":
            write_text(srt_processor.emit_srt(srt.blocks), args.output)
        elif args.target_format == "blocks-json":
            blocks = [block.model_dump() for block in srt.blocks]
            write_json(envelope(config, blocks=blocks, warnings=srt.warnings), args.output)
        else:
            sentences = [
                normalize_sentence(sentence, config.normalize_final_eob, config.strip_final_eob)
                for sentence in conversion_service.srt_to_annotated(srt, args.group)
            ]
            write_text(corpus_parser.emit_annotated_corpus(sentences), args.output)
            if args.block_timings:
                write_atomic(args.block_timings, conversion_service.emit_block_timings(srt.blocks))
            else:
                logger.warning("srt->annotated drops block timings; pass --block-timings to keep them")
        return 0

    corpus = corpus_parser.parse_annotated_corpus(text, strict=config.strict, source=source)
    sentences = [
        normalize_sentence(sentence, config.normalize_final_eob, config.strip_final_eob)
        for sentence in corpus.sentences
    ]
    if args.target_format == "annotated":
        write_text(corpus_parser.emit_annotated_corpus(sentences), args.output)
    elif args.target_format == "blocks-json":
        blocks = [
            [[line_text(line) for line in block] for block in blocks_from_annotated(sentence)]
            for sentence in sentences
        ]
        write_json(envelope(config, sentences=blocks, warnings=corpus.warnings), args.output)
    else:
        sidecar = None
        if args.block_timings:
            sidecar = conversion_service.parse_block_timings(read_text(args.block_timings), str(args.block_timings))
        timings = None
        if args.timings:
            timings = timing_parser.parse_word_timings(read_text(args.timings), source=str(args.timings))
        durations = None
        if args.durations:
            durations = timing_parser.parse_durations(read_text(args.durations), source=str(args.durations))
        timed = conversion_service.time_corpus(
            sentences,
            config.constraints,
            timings=timings,
            durations=durations,
            sidecar=sidecar,
            start_index=args.start_index,
            min_gap=args.min_gap if args.min_gap is not None else get_settings().MIN_BLOCK_GAP,
            strict=config.strict
        )
        logger.info(f"Timed blocks from {timed.mode}")
        write_text(srt_processor.emit_srt(timed.blocks), args.output)
    return 0
