from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from pathlib import Path

import numpy as np
from PIL import Image

from longtail.augment.geometry import to_yolo
from longtail.schemas.coco import Label

logger = logging.getLogger(__name__)


def load_image(path: Path) -> np.ndarray:
    """Decode *path* into an ``H x W x 3`` uint8 RGB buffer."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"), dtype=np.uint8)


def save_png(path: Path, pixels: np.ndarray) -> Path:
    """Encode *pixels* as PNG without metadata, so equal buffers give equal bytes."""
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(np.ascontiguousarray(pixels)).save(path, format="PNG")
    return path


def yolo_lines(
    labels: Iterable[Label], width: int, height: int, class_index: Mapping[int, int]
) -> list[str]:
    """One ``class cx cy w h`` line per label, 6-decimal fixed precision."""
    lines = []
    for label in labels:
        cx, cy, w, h = to_yolo(label, width, height)
        lines.append(f"{class_index[label.category_id]} {cx:.6f} {cy:.6f} {w:.6f} {h:.6f}")
    return lines


def write_yolo_labels(
    path: Path,
    labels: Iterable[Label],
    width: int,
    height: int,
    class_index: Mapping[int, int],
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = yolo_lines(labels, width, height, class_index)
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path
