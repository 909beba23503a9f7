from __future__ import annotations

from collections.abc import Iterable

from longtail.schemas.augment import Rect
from longtail.schemas.coco import BBox, Label

MIN_BOX_SIDE = 2.0
MIN_AREA_RATIO = 0.25


def adjust_labels(
    labels: Iterable[Label],
    crop: Rect,
    dest_offset: tuple[float, float],
    *,
    min_side: float = MIN_BOX_SIDE,
    min_area_ratio: float = MIN_AREA_RATIO,
) -> list[Label]:
    """Map source labels through a crop-and-translate.

    Each box is intersected with *crop* and shifted by *dest_offset*.  A box
    is dropped when the clipped width or height falls below *min_side* or the
    clipped area is under *min_area_ratio* of its original area.

    Args:
        labels: ``(category_id, BBox)`` pairs in source coordinates.
        crop: Source rectangle being copied.
        dest_offset: ``(dx, dy)`` added to clipped coordinates.

    Returns:
        Surviving labels in destination coordinates, input order kept.
    """
    dx, dy = dest_offset
    out: list[Label] = []
    for category_id, box in labels:
        x1, y1 = max(box.x, crop.x), max(box.y, crop.y)
        x2, y2 = min(box.x2, crop.x2), min(box.y2, crop.y2)
        w, h = x2 - x1, y2 - y1
        if w < min_side or h < min_side:
            continue
        if w * h < min_area_ratio * box.area:
            continue
        out.append(Label(category_id, BBox.from_corners(x1 + dx, y1 + dy, x2 + dx, y2 + dy)))
    return out


def to_yolo(label: Label, width: int, height: int) -> tuple[float, float, float, float]:
    """Normalised ``(cx, cy, w, h)`` of *label* inside a ``width x height`` image."""
    box = label.bbox
    return (
        (box.x + box.w / 2) / width,
        (box.y + box.h / 2) / height,
        box.w / width,
        box.h / height,
    )
