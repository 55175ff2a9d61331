# subkit/cli/commands/evaluate.py

import argparse
import logging
from pathlib import Path

from subkit.cli.options import envelope, run_config_from_args, run_config_options, write_json
from subkit.core.files import read_text
from subkit.services.corpus_parser import corpus_parser
from subkit.services.evaluation import evaluation_service
from subkit.services.timing_parser import timing_parser

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "evaluate",
        parents=[run_config_options()],
        help="Score hypothesis subtitles against a reference (BLEU, CPL, CPS, TER-br)"
    )
    parser.add_argument("--hyp", type=Path, action="append", required=True,
                        help="Annotated hypothesis corpus; repeat to compare systems")
    parser.add_argument("--ref", type=Path, required=True, help="Annotated reference corpus")
    parser.add_argument("--durations", type=Path, help="Sentence durations (id<TAB>seconds)")
    parser.add_argument("--timings", type=Path, help="Word timings to derive sentence durations from")
    parser.add_argument("-o", "--output", type=Path, help="Write the JSON report here instead of stdout")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = run_config_from_args(args, outputs={"report": args.output})
    ref = corpus_parser.parse_annotated_corpus(read_text(args.ref), strict=config.strict, source=str(args.ref))
    hyps = [
        corpus_parser.parse_annotated_corpus(read_text(path), strict=config.strict, source=str(path))
        for path in args.hyp
    ]

    durations = None
    if args.durations:
        durations = timing_parser.parse_durations(read_text(args.durations), source=str(args.durations))
        if args.timings:
            logger.warning("Both --durations and --timings given; using --durations for CPS")
    elif args.timings:
        timings = timing_parser.parse_word_timings(read_text(args.timings), source=str(args.timings))
        durations = timing_parser.durations_from_timings(timings)

    if len(hyps) == 1:
        report = evaluation_service.evaluate(hyps[0], ref, durations, config)
        document = envelope(config, report=report.to_json_dict())
    else:
        comparison = evaluation_service.evaluate_systems(hyps, ref, durations, config)
        document = envelope(config, **comparison.to_json_dict())
    write_json(document, args.output)
    return 0
