# subkit/cli/options.py

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from subkit.core.config import COST_KEYS, CONSTRAINT_KEYS, FLAG_KEYS, RunConfig, build_run_config
from subkit.core.files import write_atomic
from subkit.models.models import Constraints
from subkit.models.segmentation import SegmentationCost

SCHEMA_VERSION = 1

BOOLEAN_KEYS = {"hard_pause_breaks", *FLAG_KEYS}


def _option(key: str) -> str:
    return "--" + key.replace("_", "-")


def _field_type(key: str):
    model = Constraints if key in CONSTRAINT_KEYS else SegmentationCost
    annotation = model.model_fields[key].annotation
    return annotation if annotation in (int, float) else str


def run_config_options() -> argparse.ArgumentParser:
    """Parent parser with one flag per RunConfig key.

    Every flag defaults to None so that only flags given on the command
    line override the config file.
    """
    parent = argparse.ArgumentParser(add_help=False)
    limits = parent.add_argument_group("subtitling constraints")
    for key in CONSTRAINT_KEYS:
        limits.add_argument(_option(key), dest=key, type=_field_type(key), default=None)

    weights = parent.add_argument_group("segmentation cost")
    for key in COST_KEYS:
        if key in BOOLEAN_KEYS:
            weights.add_argument(_option(key), dest=key, action=argparse.BooleanOptionalAction, default=None)
        else:
            weights.add_argument(_option(key), dest=key, type=_field_type(key), default=None)

    flags = parent.add_argument_group("normalization and parsing")
    for key in FLAG_KEYS:
        flags.add_argument(_option(key), dest=key, action=argparse.BooleanOptionalAction, default=None)
    return parent


def run_config_from_args(args: argparse.Namespace, outputs: Optional[Dict[str, Any]] = None) -> RunConfig:
    overrides = {
        key: getattr(args, key)
        for key in (*CONSTRAINT_KEYS, *COST_KEYS, *FLAG_KEYS)
        if getattr(args, key, None) is not None
    }
    return build_run_config(config_path=args.config, overrides=overrides, outputs=outputs)


def envelope(config: RunConfig, **content: Any) -> Dict[str, Any]:
    """Versioned document wrapping a command result and its config echo."""
    return {"schema": SCHEMA_VERSION, "config": config.echo(), **content}


def write_json(document: Dict[str, Any], output: Optional[Path]) -> None:
    """Stable JSON on stdout, or atomically into `output`."""
    text = json.dumps(document, indent=2, ensure_ascii=False) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        write_atomic(output, text)


def write_text(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        write_atomic(output, text)
