from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from longtail.schemas.coco import Label

# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------


class Rect(BaseModel):
    """Integer pixel rectangle ``[x, x + w) x [y, y + h)``."""

    model_config = ConfigDict(frozen=True)

    x: int
    y: int
    w: int = Field(ge=0)
    h: int = Field(ge=0)

    @property
    def x2(self) -> int:
        return self.x + self.w

    @property
    def y2(self) -> int:
        return self.y + self.h

    @property
    def area(self) -> int:
        return self.w * self.h

    def contains(self, other: Rect) -> bool:
        return (
            self.x <= other.x and self.y <= other.y and other.x2 <= self.x2 and other.y2 <= self.y2
        )

    def overlaps(self, other: Rect) -> bool:
        return self.x < other.x2 and other.x < self.x2 and self.y < other.y2 and other.y < self.y2


# ---------------------------------------------------------------------------
# Mosaic
# ---------------------------------------------------------------------------


class Placement(BaseModel):
    """Where one source lands on the mosaic canvas.

    The source is first resized from ``source_size`` to ``resized_size``
    (aspect ratio kept, large enough to cover its quadrant), then ``crop``
    (in resized coordinates) is copied to ``dest`` on the canvas.
    """

    model_config = ConfigDict(frozen=True)

    image_id: int
    source_size: tuple[int, int]
    resized_size: tuple[int, int]
    crop: Rect
    dest: Rect

    @property
    def offset(self) -> tuple[int, int]:
        """Translation from resized-source to canvas coordinates."""
        return self.dest.x - self.crop.x, self.dest.y - self.crop.y

    @property
    def scale(self) -> tuple[float, float]:
        return (
            self.resized_size[0] / self.source_size[0],
            self.resized_size[1] / self.source_size[1],
        )


class MosaicLayout(BaseModel):
    """Four placements tiling a ``2S x 2S`` canvas around ``center``.

    Placements are ordered top-left, top-right, bottom-left, bottom-right.
    """

    model_config = ConfigDict(frozen=True)

    base_size: int = Field(gt=0)
    center: tuple[int, int]
    placements: tuple[Placement, Placement, Placement, Placement]

    @property
    def canvas_size(self) -> int:
        return 2 * self.base_size


# ---------------------------------------------------------------------------
# Mixup and source selection
# ---------------------------------------------------------------------------


class MixupSpec(BaseModel):
    """Mixup parameters.

    Attributes:
        alpha:       Beta(alpha, alpha) shape; must be positive when sampling.
        lam:         Fixed mixing coefficient, or ``None`` to sample one.
        probability: Chance that a sample gets mixup applied.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float = 32.0
    lam: float | None = Field(default=None, ge=0.0, le=1.0)
    probability: float = Field(default=0.3, ge=0.0, le=1.0)


class BiasSpec(BaseModel):
    """Under-represented class oversampling for mosaic sources.

    Each of the four slots is, with ``probability``, drawn by the two-stage
    class-aware rule restricted to ``rare_categories``; otherwise uniformly.
    """

    model_config = ConfigDict(frozen=True)

    rare_categories: tuple[int, ...] = ()
    probability: float = Field(default=0.5, ge=0.0, le=1.0)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AugmentedSample:
    """A composed image and its labels in canvas pixel coordinates.

    Attributes:
        pixels:     ``H x W x 3`` uint8 buffer.
        labels:     ``(category_id, BBox)`` pairs inside the buffer.
        provenance: Source ids plus a record of every transform applied.
    """

    pixels: np.ndarray
    labels: tuple[Label, ...]
    provenance: dict[str, Any] = field(default_factory=dict)

    @property
    def size(self) -> tuple[int, int]:
        """``(width, height)``."""
        return int(self.pixels.shape[1]), int(self.pixels.shape[0])
