from __future__ import annotations

"""Procedural COCO-style datasets for offline runs and tests.

Category frequencies follow a Zipf-like law, images hold several
co-occurring categories, a few images are crowded (above the default
detection cap), a few carry no annotations and some boxes are crowd regions.
Pixels are solid-colour rectangles on a noisy background, one colour per
category.
"""

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from longtail.augment.io import save_png
from longtail.errors import DomainError
from longtail.rng import Stream, stream

logger = logging.getLogger(__name__)

ANNOTATIONS_NAME = "annotations.json"
CROWD_RATE = 0.03
EMPTY_RATE = 0.02
MIN_SIDE = 48
MAX_SIDE = 160


def _category_color(category_id: int) -> tuple[int, int, int]:
    return (
        (category_id * 67) % 200 + 40,
        (category_id * 131) % 200 + 40,
        (category_id * 29) % 200 + 40,
    )


def synthetic_coco(images: int, categories: int, seed: int = 0) -> dict[str, Any]:
    """Build a COCO document with *images* images over *categories* categories.

    Raises:
        DomainError: *images* is negative or *categories* is below 1.
    """
    if images < 0:
        raise DomainError(f"Image count must be non-negative, got {images}.")
    if categories < 1:
        raise DomainError(f"Category count must be at least 1, got {categories}.")

    rng = stream(seed, Stream.fixture)
    category_ids = np.arange(1, categories + 1)
    weights = 1.0 / category_ids.astype(np.float64)
    weights /= weights.sum()

    image_rows: list[dict[str, Any]] = []
    annotation_rows: list[dict[str, Any]] = []
    next_ann = 1
    for image_id in range(1, images + 1):
        width = int(rng.integers(MIN_SIDE, MAX_SIDE + 1))
        height = int(rng.integers(MIN_SIDE, MAX_SIDE + 1))
        image_rows.append(
            {"id": image_id, "file_name": f"{image_id:06d}.png", "width": width, "height": height}
        )
        if rng.random() < EMPTY_RATE:
            continue

        # Mostly 1-6 boxes over 1-3 categories; occasionally a crowded image.
        n_boxes = int(rng.integers(11, 16)) if rng.random() < 0.05 else int(rng.integers(1, 7))
        n_classes = int(min(categories, rng.integers(1, 4)))
        present = rng.choice(category_ids, size=n_classes, replace=False, p=weights)
        for _ in range(n_boxes):
            bw = int(rng.integers(6, max(7, width // 2)))
            bh = int(rng.integers(6, max(7, height // 2)))
            annotation_rows.append(
                {
                    "id": next_ann,
                    "image_id": image_id,
                    "category_id": int(present[int(rng.integers(0, n_classes))]),
                    "bbox": [
                        int(rng.integers(0, width - bw + 1)),
                        int(rng.integers(0, height - bh + 1)),
                        bw,
                        bh,
                    ],
                    "area": bw * bh,
                    "iscrowd": int(rng.random() < CROWD_RATE),
                }
            )
            next_ann += 1

    return {
        "images": image_rows,
        "annotations": annotation_rows,
        "categories": [
            {"id": int(cid), "name": f"class_{int(cid):02d}", "supercategory": "synthetic"}
            for cid in category_ids
        ],
    }


def render_image(
    image: dict[str, Any], annotations: list[dict[str, Any]], seed: int = 0
) -> np.ndarray:
    """Draw the pixels of one fixture image from its COCO rows."""
    rng = stream(seed, Stream.fixture, image["id"])
    pixels = rng.integers(0, 40, size=(image["height"], image["width"], 3), dtype=np.uint8)
    for ann in annotations:
        x, y, w, h = ann["bbox"]
        pixels[y : y + h, x : x + w] = _category_color(ann["category_id"])
    return pixels


def write_fixture(out_dir: Path, images: int = 200, categories: int = 10, seed: int = 0) -> Path:
    """Write ``annotations.json`` and ``images/*.png`` under *out_dir*.

    Returns:
        Path of the annotation file.
    """
    doc = synthetic_coco(images, categories, seed)
    by_image: dict[int, list[dict[str, Any]]] = {}
    for ann in doc["annotations"]:
        by_image.setdefault(ann["image_id"], []).append(ann)

    image_dir = out_dir / "images"
    image_dir.mkdir(parents=True, exist_ok=True)
    for image in doc["images"]:
        save_png(image_dir / image["file_name"], render_image(image, by_image.get(image["id"], []), seed))

    path = out_dir / ANNOTATIONS_NAME
    path.write_text(json.dumps(doc, separators=(",", ":")) + "\n", encoding="utf-8")
    logger.info(
        "Synthetic fixture: %d images, %d annotations, %d categories in %s.",
        len(doc["images"]),
        len(doc["annotations"]),
        categories,
        out_dir,
    )
    return path
