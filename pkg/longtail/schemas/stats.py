from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class ClassHistogram(BaseModel):
    """Per-category image and instance counts.

    ``order`` lists every category by descending image count, ties by
    ascending id.  A category has at least one image exactly when it has at
    least one instance.
    """

    model_config = ConfigDict(frozen=True)

    per_class_image_count: dict[int, int] = Field(default_factory=dict)
    per_class_instance_count: dict[int, int] = Field(default_factory=dict)
    order: tuple[int, ...] = ()
    names: dict[int, str] = Field(default_factory=dict)

    @property
    def total_images(self) -> int:
        return sum(self.per_class_image_count.values())

    def name_of(self, category_id: int) -> str:
        return self.names.get(category_id, str(category_id))


class ZipfFit(BaseModel):
    """Goodness of fit of a histogram's image counts against a Zipf law.

    Attributes:
        chi_square: Pearson statistic after pooling bins with expected
                    count below :data:`~longtail.stats.fit.MIN_EXPECTED`.
        l1:         ``sum |observed share - P(n)|`` over ranks.
        dof:        Degrees of freedom, pooled bins minus one.
        total:      Sum of observed image counts.
        observed:   Image counts in rank order.
        expected:   ``P(n) * total`` in rank order.
    """

    model_config = ConfigDict(frozen=True)

    zipf_s: float
    k: int = Field(ge=1)
    chi_square: float = Field(ge=0.0)
    l1: float = Field(ge=0.0)
    dof: int = Field(ge=0)
    total: int = Field(ge=0)
    observed: tuple[int, ...]
    expected: tuple[float, ...]
