# subkit/cli/commands/analyze.py

import argparse
import logging
from pathlib import Path

from subkit.cli.options import envelope, run_config_from_args, run_config_options, write_json
from subkit.core.files import read_text, write_atomic
from subkit.services.corpus_parser import corpus_parser
from subkit.services.prosody import analyze_corpus, records_tsv
from subkit.services.timing_parser import timing_parser

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "analyze",
        parents=[run_config_options()],
        help="Pause statistics per break category and the derived <eob> threshold"
    )
    parser.add_argument("--corpus", type=Path, required=True, help="Annotated corpus")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--timings", type=Path, help="Word timings (id<TAB>word<TAB>start<TAB>end)")
    source.add_argument("--ctm", type=Path, help="Word timings in CTM format")
    parser.add_argument("--pauses-tsv", type=Path, help="Also dump every pause record as TSV")
    parser.add_argument("-o", "--output", type=Path, help="Write the JSON report here instead of stdout")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = run_config_from_args(args, outputs={"report": args.output, "pauses_tsv": args.pauses_tsv})
    corpus = corpus_parser.parse_annotated_corpus(
        read_text(args.corpus), strict=config.strict, source=str(args.corpus)
    )
    if args.ctm:
        timings = timing_parser.parse_ctm(read_text(args.ctm), source=str(args.ctm))
    else:
        timings = timing_parser.parse_word_timings(read_text(args.timings), source=str(args.timings))

    report = analyze_corpus(corpus, timings)
    if args.pauses_tsv:
        write_atomic(args.pauses_tsv, records_tsv(report))
        logger.info(f"Wrote {len(report.records)} pause records to {args.pauses_tsv}")
    write_json(envelope(config, report=report.to_json_dict()), args.output)
    return 0
