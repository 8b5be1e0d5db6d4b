from enum import Enum
from pathlib import Path

from pydantic import (
    BaseModel,
    ConfigDict,
    FilePath,
    NonNegativeInt,
    PositiveInt,
    model_validator,
)

from uageo.limits import DEFAULT_LIMITS, Limits


class OutputFormat(Enum):
    TEXT = "text"
    DOT = "dot"


# Inputs each subcommand cannot run without
REQUIRED: dict[str, tuple[str, ...]] = {
    "solve": ("algebra", "vars", "system"),
    "closure-set": ("algebra", "vars", "points"),
    "closure-pair": ("algebra", "vars", "system", "pair"),
    "algebraic": ("algebra", "vars", "points"),
    "lattice": ("algebra", "vars"),
    "equiv": ("algebra", "algebra2", "vars"),
    "identities": ("algebra", "vars"),
    "quasi": ("algebra", "vars", "system", "pair"),
    "reduce": ("algebra", "vars", "system"),
    "pullback": ("algebra", "vars", "substitution", "system", "pair"),
    "rep-solve": ("rep", "vars"),
    "rep-closure": ("rep", "vars", "pair"),
    "rep-triangular": ("rep", "rep2"),
    "rep-wreath": ("rep", "group"),
}


class RunConfig(BaseModel):
    """Everything one CLI invocation needs, validated before any work starts."""

    model_config = ConfigDict(frozen=True)

    command: str
    algebra: FilePath | None = None
    algebra2: FilePath | None = None
    system: FilePath | None = None
    points: FilePath | None = None
    substitution: FilePath | None = None
    rep: FilePath | None = None
    rep2: FilePath | None = None
    group: FilePath | None = None
    pair: str | None = None
    vars: PositiveInt | None = None
    group_vars: NonNegativeInt = 1
    depth: NonNegativeInt = 2
    system_limit: NonNegativeInt = 2
    max_points: PositiveInt | None = None
    max_terms: PositiveInt | None = None
    max_systems: PositiveInt | None = None
    out: Path | None = None
    format: OutputFormat = OutputFormat.TEXT
    report: bool = False

    @model_validator(mode="after")
    def _check_inputs(self) -> "RunConfig":
        if self.command not in REQUIRED:
            raise ValueError(f"unknown subcommand '{self.command}'")
        missing = [name for name in REQUIRED[self.command] if getattr(self, name) is None]
        if missing:
            flags = ", ".join(f"--{name.replace('_', '-')}" for name in missing)
            raise ValueError(f"{self.command} needs {flags}")
        if self.format is OutputFormat.DOT and self.command != "lattice":
            raise ValueError("--format dot only applies to the lattice subcommand")
        return self

    def limits(self) -> Limits:
        overrides = {
            name: value
            for name, value in (
                ("max_points", self.max_points),
                ("max_terms", self.max_terms),
                ("max_systems", self.max_systems),
            )
            if value is not None
        }
        return DEFAULT_LIMITS.model_copy(update=overrides)
