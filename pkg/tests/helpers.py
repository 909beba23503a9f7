from __future__ import annotations

"""Builders shared by the test suites."""

import json
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

from longtail.coco.parser import parse_coco
from longtail.models.dataset import DatasetIndex

DEFAULT_SIZE = 100


def coco_doc(
    images: Iterable[tuple[int, int, int]],
    annotations: Iterable[Sequence[Any]],
    categories: Mapping[int, str] | Iterable[int],
) -> dict[str, Any]:
    """Return a COCO document.

    *images* are ``(id, width, height)``; *annotations* are
    ``(id, image_id, category_id, [x, y, w, h])`` with an optional fifth
    ``iscrowd`` element.
    """
    if not isinstance(categories, Mapping):
        categories = {cid: f"class_{cid}" for cid in categories}
    ann_rows = []
    for ann in annotations:
        aid, iid, cid, bbox = ann[:4]
        row = {"id": aid, "image_id": iid, "category_id": cid, "bbox": list(bbox)}
        if len(ann) > 4:
            row["iscrowd"] = int(ann[4])
        ann_rows.append(row)
    return {
        "images": [
            {"id": iid, "file_name": f"{iid:06d}.png", "width": w, "height": h}
            for iid, w, h in images
        ],
        "annotations": ann_rows,
        "categories": [{"id": cid, "name": name} for cid, name in categories.items()],
    }


def to_bytes(doc: dict[str, Any]) -> bytes:
    return json.dumps(doc).encode("utf-8")


def make_index(
    images: Iterable[tuple[int, int, int]],
    annotations: Iterable[Sequence[Any]],
    categories: Mapping[int, str] | Iterable[int],
) -> DatasetIndex:
    """Parse a hand-built document into a :class:`DatasetIndex`."""
    return parse_coco(to_bytes(coco_doc(images, annotations, categories)))


def index_from_class_sets(
    class_sets: Sequence[Iterable[int]],
    categories: Iterable[int] | None = None,
    boxes_per_class: int = 1,
) -> DatasetIndex:
    """Image ``i + 1`` holds *boxes_per_class* boxes of each class in ``class_sets[i]``."""
    images = [(i + 1, DEFAULT_SIZE, DEFAULT_SIZE) for i in range(len(class_sets))]
    annotations = []
    next_id = 1
    for i, classes in enumerate(class_sets):
        for cid in classes:
            for _ in range(boxes_per_class):
                annotations.append((next_id, i + 1, cid, [10.0, 10.0, 20.0, 20.0]))
                next_id += 1
    if categories is None:
        categories = sorted({c for s in class_sets for c in s})
    return make_index(images, annotations, categories)


def disjoint_index(counts: Mapping[int, int]) -> DatasetIndex:
    """``counts[c]`` single-class images per class ``c``, classes in disjoint images."""
    class_sets: list[tuple[int, ...]] = []
    for cid in sorted(counts):
        class_sets.extend([(cid,)] * counts[cid])
    return index_from_class_sets(class_sets, categories=sorted(counts))
