# subkit/cli/main.py

import argparse
import logging
from pathlib import Path
from typing import List, Optional

from subkit.cli.commands import analyze, convert, evaluate, segment
from subkit.core.config import get_settings
from subkit.core.exceptions import SubkitError, UsageError
from subkit.core.logging_config import setup_logging

logger = logging.getLogger(__name__)

COMMANDS = (evaluate, analyze, segment, convert)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports misuse as UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="subkit",
        description="Evaluate, analyze, segment and convert subtitle corpora"
    )
    parser.add_argument("--config", type=Path, default=None, help="key=value run configuration file")
    parser.add_argument("--log-level", default=None, help="Logging level (default from SUBKIT_LOG_LEVEL)")
    parser.add_argument("--log-format", choices=["text", "json"], default=None, help="Log line format on stderr")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code.

    0 success, 2 format error, 3 semantic mismatch, 64 usage error.
    """
    settings = get_settings()
    setup_logging(settings.LOG_LEVEL, settings.LOG_FORMAT)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        logger.error(e.message)
        return e.exit_code

    if args.log_level or args.log_format:
        try:
            setup_logging(args.log_level or settings.LOG_LEVEL, args.log_format or settings.LOG_FORMAT)
        except ValueError as e:
            logger.error(f"Invalid log level: {e}")
            return UsageError.exit_code

    try:
        return args.handler(args)
    except SubkitError as e:
        logger.error(f"{args.command} failed: {e}")
        return e.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
