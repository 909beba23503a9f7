from __future__ import annotations

"""Validated CLI configuration.

``run(argv)`` turns the parsed namespace into one :class:`RunConfig` before
doing any work; a :class:`pydantic.ValidationError` at this point is a usage
error.
"""

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from longtail.models.enums import (
    AugmentMode,
    MixupPairing,
    RepeatAggregation,
    SamplingStrategy,
    SourceMode,
)
from longtail.rng import U64_MAX

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class _Options(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class CurateOptions(_Options):
    annotations: Path
    out: Path
    report: Path
    top_k: int = Field(default=10, ge=1)
    max_detections: int = Field(default=10, ge=0)
    zipf_s: float = Field(default=1.01, allow_inf_nan=False)
    val_annotations: Path | None = None
    val_out: Path | None = None

    @model_validator(mode="after")
    def _val_pair(self) -> CurateOptions:
        if (self.val_out is None) != (self.val_annotations is None):
            raise ValueError("--val-annotations and --val-out must be given together")
        return self


class SampleOptions(_Options):
    annotations: Path
    out: Path
    strategy: SamplingStrategy = SamplingStrategy.uniform
    t: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)
    aggregation: RepeatAggregation = RepeatAggregation.max
    epochs: int = Field(default=1, ge=1)
    length: int | None = Field(default=None, ge=0)


class WeightsOptions(_Options):
    annotations: Path
    out: Path


class AugmentOptions(_Options):
    annotations: Path
    images: Path
    out: Path
    mode: AugmentMode = AugmentMode.mosaic
    count: int = Field(default=16, ge=0)
    base_size: int = Field(default=320, gt=0)
    mixup_prob: float = Field(default=0.3, ge=0.0, le=1.0)
    alpha: float = Field(default=32.0, gt=0.0, allow_inf_nan=False)
    lam: float | None = Field(default=None, ge=0.0, le=1.0)
    source_mode: SourceMode = SourceMode.uniform
    pairing: MixupPairing = MixupPairing.uniform
    rare_categories: tuple[int, ...] | None = None
    bias_prob: float = Field(default=0.5, ge=0.0, le=1.0)

    @field_validator("rare_categories", mode="before")
    @classmethod
    def _split(cls, value: object) -> object:
        if isinstance(value, str):
            parts = [p.strip() for p in value.split(",") if p.strip()]
            if not parts:
                raise ValueError("--rare-categories needs at least one category id")
            return tuple(int(p) for p in parts)
        return value


class StatsOptions(_Options):
    annotations: Path
    out: Path
    zipf_s: float = Field(default=1.01, allow_inf_nan=False)
    xlsx: bool = False


class FixtureOptions(_Options):
    out: Path
    images: int = Field(default=200, ge=0)
    categories: int = Field(default=10, ge=1)


CommandOptions = (
    CurateOptions | SampleOptions | WeightsOptions | AugmentOptions | StatsOptions | FixtureOptions
)


class RunConfig(BaseModel):
    """One fully resolved invocation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: str
    seed: int = Field(default=0, ge=0, le=U64_MAX)
    log_level: LogLevel = "INFO"
    threads: int = Field(default=1, ge=1)
    options: CommandOptions
