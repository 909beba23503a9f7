from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from longtail.models.dataset import DatasetIndex
from longtail.models.enums import ViolationRule


@dataclass(frozen=True)
class Violation:
    """One broken invariant, named by the offending entity."""

    entity: str  # "image", "annotation" or "category"
    entity_id: int
    rule: ViolationRule
    message: str

    def __str__(self) -> str:
        return f"{self.entity} {self.entity_id}: {self.rule.value}: {self.message}"


def _check_annotations(index: DatasetIndex) -> list[Violation]:
    out: list[Violation] = []
    for aid in sorted(index.annotations):
        ann = index.annotations[aid]
        box = ann.bbox
        if not (box.w > 0 and box.h > 0):
            out.append(
                Violation("annotation", aid, ViolationRule.bbox_positive,
                          f"bbox has non-positive size ({box.w} x {box.h}).")
            )
        image = index.images.get(ann.image_id)
        if image is None:
            out.append(
                Violation("annotation", aid, ViolationRule.image_reference,
                          f"image_id {ann.image_id} does not exist.")
            )
        elif not (box.x >= 0 and box.y >= 0 and box.x2 <= image.width and box.y2 <= image.height):
            out.append(
                Violation("annotation", aid, ViolationRule.bbox_in_bounds,
                          f"bbox {box.to_list()} exceeds image {image.width}x{image.height}.")
            )
        if ann.category_id not in index.categories:
            out.append(
                Violation("annotation", aid, ViolationRule.category_reference,
                          f"category_id {ann.category_id} does not exist.")
            )
    return out


def _check_images(index: DatasetIndex) -> list[Violation]:
    expected: dict[int, list[int]] = {iid: [] for iid in index.images}
    for aid in sorted(index.annotations):
        ann = index.annotations[aid]
        if ann.image_id in expected:
            expected[ann.image_id].append(aid)

    out: list[Violation] = []
    for iid in sorted(index.images):
        image = index.images[iid]
        if image.width <= 0 or image.height <= 0:
            out.append(
                Violation("image", iid, ViolationRule.image_positive_size,
                          f"size {image.width}x{image.height} is not positive.")
            )
        if sorted(image.annotation_ids) != expected[iid]:
            out.append(
                Violation("image", iid, ViolationRule.annotation_listing,
                          "annotation_ids do not match the annotations referencing this image.")
            )
    return out


def _check_category_lists(index: DatasetIndex) -> list[Violation]:
    expected: dict[int, set[int]] = {cid: set() for cid in index.categories}
    for ann in index.annotations.values():
        if not ann.iscrowd and ann.image_id in index.images:
            expected.setdefault(ann.category_id, set()).add(ann.image_id)

    out: list[Violation] = []
    for cid in sorted(set(expected) | set(index.images_by_category)):
        listed = list(index.images_by_category.get(cid, ()))
        for iid, n in sorted(Counter(listed).items()):
            if n > 1:
                out.append(
                    Violation("category", cid, ViolationRule.duplicate_listing,
                              f"image {iid} is listed {n} times.")
                )
        if listed != sorted(listed):
            out.append(
                Violation("category", cid, ViolationRule.listing_order,
                          "image list is not sorted ascending.")
            )
        if set(listed) != expected.get(cid, set()):
            out.append(
                Violation("category", cid, ViolationRule.category_listing,
                          "image list does not match the images holding this category.")
            )
    return out


def validate(index: DatasetIndex) -> list[Violation]:
    """Check every :class:`DatasetIndex` invariant.

    Never raises: an empty list means the index is sound, otherwise each
    :class:`Violation` names the offending entity id and the rule it breaks.
    """
    return _check_annotations(index) + _check_images(index) + _check_category_lists(index)
