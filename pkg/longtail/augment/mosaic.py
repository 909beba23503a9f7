from __future__ import annotations

"""Four-image mosaic composition.

The canvas is ``2S x 2S``.  A center ``(cx, cy)`` is drawn uniformly from
``[S/2, 3S/2]`` on each axis, splitting the canvas into four quadrants that
meet at the center.  Each source is resized, aspect ratio kept, just enough
to cover its quadrant and then cropped on the side touching the center, so
the four tiles cover the canvas exactly and every tile reaches the middle.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from PIL import Image

from longtail.augment.geometry import adjust_labels
from longtail.errors import DomainError
from longtail.schemas.augment import AugmentedSample, MosaicLayout, Placement, Rect
from longtail.schemas.coco import ImageRecord, Label

logger = logging.getLogger(__name__)

QUADRANTS = ("top_left", "top_right", "bottom_left", "bottom_right")


def center_range(base_size: int) -> tuple[int, int]:
    """Inclusive integer range for each center coordinate; no quadrant is empty."""
    lo = max(1, math.ceil(base_size / 2))
    hi = min(2 * base_size - 1, (3 * base_size) // 2)
    return lo, hi


def quadrant_rects(base_size: int, center: tuple[int, int]) -> tuple[Rect, Rect, Rect, Rect]:
    """Destination rectangles, top-left first, that tile the canvas around *center*."""
    side = 2 * base_size
    cx, cy = center
    return (
        Rect(x=0, y=0, w=cx, h=cy),
        Rect(x=cx, y=0, w=side - cx, h=cy),
        Rect(x=0, y=cy, w=cx, h=side - cy),
        Rect(x=cx, y=cy, w=side - cx, h=side - cy),
    )


def cover_size(width: int, height: int, target_w: int, target_h: int) -> tuple[int, int]:
    """Smallest aspect-preserving size of a ``width x height`` image covering the target."""
    scale = max(target_w / width, target_h / height)
    return max(target_w, round(width * scale)), max(target_h, round(height * scale))


def _crop_toward_center(quadrant: int, resized: tuple[int, int], dest: Rect) -> Rect:
    rw, rh = resized
    x = rw - dest.w if quadrant in (0, 2) else 0
    y = rh - dest.h if quadrant in (0, 1) else 0
    return Rect(x=x, y=y, w=dest.w, h=dest.h)


def plan_mosaic(
    sources: Sequence[ImageRecord],
    base_size: int,
    rng: np.random.Generator,
    *,
    center: tuple[int, int] | None = None,
) -> MosaicLayout:
    """Lay out four sources on a ``2S x 2S`` canvas.

    Args:
        sources: Exactly four image records, top-left first.
        base_size: ``S``.
        rng: Stream for the center draw.
        center: Fixed center, bypassing the draw.

    Raises:
        DomainError: *base_size* is not positive, *sources* is not four
            entries, or a source has no pixels.
    """
    if base_size <= 0:
        raise DomainError(f"Mosaic base size must be positive, got {base_size}.")
    if len(sources) != 4:
        raise DomainError(f"Mosaic needs exactly 4 sources, got {len(sources)}.")
    if center is None:
        lo, hi = center_range(base_size)
        center = (int(rng.integers(lo, hi + 1)), int(rng.integers(lo, hi + 1)))

    placements = []
    for quadrant, (record, dest) in enumerate(zip(sources, quadrant_rects(base_size, center), strict=True)):
        if record.width <= 0 or record.height <= 0:
            raise DomainError(f"Image {record.id} has no pixels.")
        resized = cover_size(record.width, record.height, dest.w, dest.h)
        placements.append(
            Placement(
                image_id=record.id,
                source_size=(record.width, record.height),
                resized_size=resized,
                crop=_crop_toward_center(quadrant, resized, dest),
                dest=dest,
            )
        )
    return MosaicLayout(base_size=base_size, center=center, placements=tuple(placements))


def resize_source(pixels: np.ndarray, size: tuple[int, int]) -> np.ndarray:
    """Bilinear resize of an ``H x W x 3`` buffer to ``size = (w, h)``."""
    if (pixels.shape[1], pixels.shape[0]) == size:
        return pixels
    resized = Image.fromarray(pixels).resize(size, Image.Resampling.BILINEAR)
    return np.asarray(resized, dtype=np.uint8)


def apply_mosaic(
    sources: Sequence[tuple[np.ndarray, Sequence[Label]]], layout: MosaicLayout
) -> AugmentedSample:
    """Compose the mosaic described by *layout*.

    Args:
        sources: ``(pixels, labels)`` per placement, in layout order; labels
            in source pixel coordinates.

    Raises:
        DomainError: A buffer does not match its recorded source size.
    """
    if len(sources) != len(layout.placements):
        raise DomainError(f"Mosaic needs {len(layout.placements)} sources, got {len(sources)}.")
    side = layout.canvas_size
    canvas = np.zeros((side, side, 3), dtype=np.uint8)
    labels: list[Label] = []

    for (pixels, source_labels), placement in zip(sources, layout.placements, strict=True):
        width, height = placement.source_size
        if pixels.ndim != 3 or pixels.shape[2] != 3 or pixels.shape[:2] != (height, width):
            raise DomainError(
                f"Image {placement.image_id}: buffer shape {pixels.shape} does not match "
                f"recorded size {width}x{height}."
            )
        resized = resize_source(pixels, placement.resized_size)
        crop, dest = placement.crop, placement.dest
        canvas[dest.y : dest.y2, dest.x : dest.x2] = resized[crop.y : crop.y2, crop.x : crop.x2]

        sx, sy = placement.scale
        scaled = [Label(c, box.scaled(sx, sy)) for c, box in source_labels]
        labels.extend(adjust_labels(scaled, crop, placement.offset))

    provenance = {
        "source_image_ids": [p.image_id for p in layout.placements],
        "mosaic": layout.model_dump(mode="json"),
    }
    return AugmentedSample(pixels=canvas, labels=tuple(labels), provenance=provenance)
