from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from longtail.models.enums import RepeatAggregation, SamplingStrategy


class RepeatFactorTable(BaseModel):
    """Repeat factors for repeat-factor sampling.

    Attributes:
        t:                  Oversampling threshold.
        aggregation:        How category factors combine per image.
        category_frequency: ``c -> f_c``, the fraction of images holding ``c``.
        category_repeat:    ``c -> r_c = max(1, sqrt(t / f_c))``.
        image_repeat:       ``i -> r_i``; 1.0 for images without labels.
    """

    model_config = ConfigDict(frozen=True)

    t: float = Field(gt=0)
    aggregation: RepeatAggregation = RepeatAggregation.max
    category_frequency: dict[int, float]
    category_repeat: dict[int, float]
    image_repeat: dict[int, float]


class SamplingSchedule(BaseModel):
    """One epoch's ordered image ids."""

    model_config = ConfigDict(frozen=True)

    epoch: int = Field(ge=0)
    seed: int = Field(ge=0)
    strategy: SamplingStrategy
    image_ids: tuple[int, ...]

    def to_line(self) -> dict[str, object]:
        """The JSON-lines record consumed by training loops."""
        return {"epoch": self.epoch, "image_ids": list(self.image_ids)}
