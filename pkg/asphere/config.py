from __future__ import annotations

import enum
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import rtoml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

CONFIG_ENV = "ASPHERE_CONFIG"


class ConfigError(ValueError):
    pass


class OutputFormat(str, enum.Enum):
    DOT = "dot"
    JSON = "json"
    TEXT = "text"


class Config(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    max_cycle_len: int = Field(4, ge=2)
    weight_grid: List[str] = Field(default_factory=lambda: ["0", "1/2", "1"])
    output_format: OutputFormat = OutputFormat.TEXT
    processes: Optional[int] = Field(None, ge=1)
    log_file: Path = Path("asphere-log.txt")

    @field_validator("weight_grid", mode="before")
    @classmethod
    def _grid_as_strings(cls, value: Any) -> List[str]:
        if isinstance(value, str):
            value = [part for part in value.split(",") if part.strip()]
        if not value:
            raise ValueError("the weight grid must not be empty")
        grid = []
        for entry in value:
            try:
                grid.append(str(Fraction(str(entry).strip())))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"not an exact rational: {entry!r}") from None
        return grid

    @property
    def grid(self) -> Tuple[Fraction, ...]:
        return tuple(sorted({Fraction(entry) for entry in self.weight_grid}))


def _read(path: Path) -> Dict[str, Any]:
    try:
        data = rtoml.load(path)
    except (OSError, rtoml.TomlParsingError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    # Either a dedicated file or a pyproject-style [tool.asphere] table.
    return data["tool"].get("asphere", {}) if "tool" in data else data


def load_config(path: Optional[Path] = None, **overrides: Any) -> Config:
    """Defaults, then the config file (`path` or `$ASPHERE_CONFIG`), then non-None overrides."""
    if path is None and os.environ.get(CONFIG_ENV):
        path = Path(os.environ[CONFIG_ENV])
    values: Dict[str, Any] = _read(path) if path is not None else {}
    values.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return Config(**values)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
