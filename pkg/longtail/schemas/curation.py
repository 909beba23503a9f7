from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class ZipfSpec(BaseModel):
    """Rank-to-probability targets of a Zipf law.

    Attributes:
        s:             Exponent.
        k:             Number of ranks.
        probabilities: ``probabilities[n - 1]`` is the share of rank ``n``.
    """

    model_config = ConfigDict(frozen=True)

    s: float
    k: int = Field(ge=1)
    probabilities: tuple[float, ...]


class CurationReport(BaseModel):
    """Tallies produced by a curation run.

    ``kept_image_count + removed_by_detection_cap + removed_by_category_strip
    + removed_by_surplus_filter == input_image_count`` always holds.
    """

    input_image_count: int = Field(ge=0)
    kept_image_count: int = Field(ge=0)
    removed_by_detection_cap: int = Field(default=0, ge=0)
    removed_by_category_strip: int = Field(default=0, ge=0)
    removed_by_surplus_filter: int = Field(default=0, ge=0)
    per_class_image_counts: dict[int, int] = Field(default_factory=dict)
    per_class_instance_counts: dict[int, int] = Field(default_factory=dict)
    rank_order: list[int] = Field(default_factory=list)
    targets: dict[int, int] = Field(default_factory=dict)
    residual_deviation: dict[int, int] = Field(default_factory=dict)
    zipf_s: float | None = None
    seed: int | None = None
