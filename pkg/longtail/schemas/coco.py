from __future__ import annotations

import math
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field

# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------


def _fit(start: float, stop: float) -> float:
    """Largest extent ``e`` with ``start + e <= stop`` in floating point."""
    extent = stop - start
    while extent > 0 and start + extent > stop:
        extent = math.nextafter(extent, 0.0)
    return extent


class BBox(BaseModel):
    """Axis-aligned box in COCO ``xywh`` convention, absolute pixels.

    Positivity and image-bound invariants are enforced on ingest and checked by
    :func:`longtail.coco.validator.validate`; the model itself accepts any
    finite values so that invalid indices can still be represented and
    reported.
    """

    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    w: float
    h: float

    @classmethod
    def from_corners(cls, x1: float, y1: float, x2: float, y2: float) -> BBox:
        """Build the box spanning ``[x1, x2] x [y1, y2]``.

        Width and height are nudged down by an ulp where needed so that
        ``x + w <= x2`` and ``y + h <= y2`` hold in floating point.
        """
        return cls(x=x1, y=y1, w=_fit(x1, x2), h=_fit(y1, y2))

    @property
    def x2(self) -> float:
        return self.x + self.w

    @property
    def y2(self) -> float:
        return self.y + self.h

    @property
    def area(self) -> float:
        return self.w * self.h

    def to_list(self) -> list[float]:
        """Return ``[x, y, w, h]`` as stored in COCO JSON."""
        return [self.x, self.y, self.w, self.h]

    def scaled(self, sx: float, sy: float) -> BBox:
        """Return this box with x/w multiplied by *sx* and y/h by *sy*."""
        return BBox.from_corners(self.x * sx, self.y * sy, self.x2 * sx, self.y2 * sy)


class Label(NamedTuple):
    """A category-tagged box, the unit AdjustLabels and mixup operate on."""

    category_id: int
    bbox: BBox


# ---------------------------------------------------------------------------
# COCO records
# ---------------------------------------------------------------------------


class Annotation(BaseModel):
    """One object instance."""

    model_config = ConfigDict(frozen=True)

    id: int
    image_id: int
    category_id: int
    bbox: BBox
    iscrowd: bool = False


class ImageRecord(BaseModel):
    """One image and the ids of the annotations placed on it."""

    model_config = ConfigDict(frozen=True)

    id: int
    file_name: str
    width: int
    height: int
    annotation_ids: tuple[int, ...] = Field(default_factory=tuple)


class IngestStats(BaseModel):
    """Counters collected while clamping boxes on ingest."""

    model_config = ConfigDict(frozen=True)

    clamped_boxes: int = 0
    dropped_boxes: int = 0
