from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import BaseModel, Field, ValidationError
from dotenv import dotenv_values
from functools import lru_cache
from typing import Any, Dict, Literal, Optional
import logging
from pathlib import Path

from subkit.core.exceptions import UsageError
from subkit.models.models import Constraints
from subkit.models.segmentation import SegmentationCost

class Settings(BaseSettings):
    """Toolkit settings with validation."""

    # Environment
    ENV: str = Field(default="dev", description="Environment (dev/test/prod)")

    # Logging
    LOG_LEVEL: str = Field(
        default="INFO",
        description="Logging level"
    )
    LOG_FORMAT: Literal["text", "json"] = Field(
        default="text",
        description="Plain or structured (JSON) log lines on stderr"
    )

    # Default key=value run configuration (SUBKIT_CONFIG)
    CONFIG: Optional[Path] = Field(
        default=None,
        description="Path of the default run configuration file"
    )

    # Subtitling constraints
    MAX_CHARS_PER_LINE: int = Field(
        default=42,
        description="Characters per line limit (CPL)"
    )
    MAX_CHARS_PER_SECOND: float = Field(
        default=21.0,
        description="Reading speed limit (CPS)"
    )
    MAX_LINES_PER_BLOCK: int = Field(
        default=2,
        description="Lines allowed on screen at once"
    )
    EOB_PAUSE_THRESHOLD: float = Field(
        default=0.37,
        description="Pause (seconds) above which a block break is required"
    )

    # Timing
    MIN_BLOCK_GAP: float = Field(
        default=0.024,
        description="Minimum gap (seconds) between consecutive subtitle blocks"
    )

    # TER settings
    MAX_SHIFT_SIZE: int = Field(
        default=10,
        description="Longest token span a TER shift may move"
    )
    MASK_TOKEN: str = Field(
        default="W",
        description="Token replacing every word before TER-br"
    )

    model_config = SettingsConfigDict(
        env_prefix="SUBKIT_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore"
    )

    def default_constraints(self) -> Constraints:
        return Constraints(
            max_chars_per_line=self.MAX_CHARS_PER_LINE,
            max_chars_per_second=self.MAX_CHARS_PER_SECOND,
            max_lines_per_block=self.MAX_LINES_PER_BLOCK,
            eob_pause_threshold=self.EOB_PAUSE_THRESHOLD
        )

@lru_cache()
def get_settings() -> Settings:
    """Create and cache settings instance."""
    try:
        settings = Settings()
        logging.debug(f"Settings loaded successfully for environment: {settings.ENV}")
        return settings
    except Exception as e:
        logging.error(f"Failed to load settings: {e}")
        raise


CONSTRAINT_KEYS = tuple(Constraints.model_fields)
COST_KEYS = tuple(SegmentationCost.model_fields)
FLAG_KEYS = ("normalize_final_eob", "strip_final_eob", "merge_break_types", "strict")
RUN_CONFIG_KEYS = frozenset(CONSTRAINT_KEYS + COST_KEYS + FLAG_KEYS)


class RunConfig(BaseModel):
    """Everything that determines the outcome of one command.

    A report echoes this object verbatim, so inputs plus the echo
    reproduce the report.
    """

    constraints: Constraints = Field(default_factory=Constraints)
    cost: SegmentationCost = Field(default_factory=SegmentationCost)
    normalize_final_eob: bool = False
    strip_final_eob: bool = False
    merge_break_types: bool = False
    strict: bool = True
    outputs: Dict[str, str] = Field(default_factory=dict)

    def echo(self) -> Dict[str, Any]:
        """Flat key=value view, the same keys a config file accepts."""
        flat: Dict[str, Any] = {}
        flat.update(self.constraints.model_dump())
        cost = self.cost.model_dump()
        cost["function_words"] = ",".join(cost["function_words"])
        flat.update(cost)
        for key in FLAG_KEYS:
            flat[key] = getattr(self, key)
        flat["outputs"] = dict(self.outputs)
        return flat


def load_config_file(path: Path) -> Dict[str, str]:
    """Read a key=value run configuration file."""
    path = Path(path)
    if not path.exists():
        raise UsageError(f"Config file not found: {path}")
    values = {key: value for key, value in dotenv_values(path).items() if value is not None}
    unknown = sorted(set(values) - RUN_CONFIG_KEYS)
    if unknown:
        raise UsageError(f"{path}: unknown config keys: {', '.join(unknown)}")
    logging.getLogger(__name__).debug(f"Loaded {len(values)} config values from {path}")
    return values


def build_run_config(
    settings: Optional[Settings] = None,
    config_path: Optional[Path] = None,
    overrides: Optional[Dict[str, Any]] = None,
    outputs: Optional[Dict[str, str]] = None
) -> RunConfig:
    """Layer settings defaults, the config file and explicit overrides."""
    settings = settings or get_settings()
    values: Dict[str, Any] = settings.default_constraints().model_dump()

    path = config_path or settings.CONFIG
    if path:
        values.update(load_config_file(path))

    for key, value in (overrides or {}).items():
        if key not in RUN_CONFIG_KEYS:
            raise UsageError(f"Unknown option: {key}")
        if value is not None:
            values[key] = value

    try:
        config = RunConfig(
            constraints=Constraints(**{k: values[k] for k in CONSTRAINT_KEYS if k in values}),
            cost=SegmentationCost(**{k: values[k] for k in COST_KEYS if k in values}),
            outputs={k: str(v) for k, v in (outputs or {}).items() if v is not None},
            **{k: values[k] for k in FLAG_KEYS if k in values}
        )
    except ValidationError as e:
        raise UsageError(f"Invalid configuration: {e}")

    if config.normalize_final_eob and config.strip_final_eob:
        raise UsageError("normalize_final_eob and strip_final_eob are mutually exclusive")
    return config
