from __future__ import annotations

import logging
from collections.abc import Iterable

from longtail.errors import DomainError
from longtail.models.dataset import DatasetIndex

logger = logging.getLogger(__name__)


def filter_max_detections(index: DatasetIndex, max_detections: int) -> DatasetIndex:
    """Drop images carrying more than *max_detections* annotations.

    The cap is inclusive: an image with exactly *max_detections* annotations
    is kept.  Every annotation counts, crowd regions included.
    """
    if max_detections < 0:
        raise DomainError(f"max_detections must be non-negative, got {max_detections}.")
    kept = [iid for iid in index.image_ids if index.annotation_count(iid) <= max_detections]
    logger.info(
        "Detection cap %d kept %d of %d images.", max_detections, len(kept), len(index.images)
    )
    return index.subset(kept)


def rank_categories(index: DatasetIndex) -> list[tuple[int, int]]:
    """Return ``(category_id, image_count)`` by descending count, ties by ascending id."""
    return sorted(index.image_counts().items(), key=lambda item: (-item[1], item[0]))


def select_top_k_categories(index: DatasetIndex, k: int) -> list[int]:
    """Return the *k* categories with the most images.

    Raises:
        DomainError: *k* is below 1 or fewer than *k* categories have images.
    """
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}.")
    ranked = [cid for cid, count in rank_categories(index) if count > 0]
    if len(ranked) < k:
        raise DomainError(
            f"Only {len(ranked)} categories have images; cannot select the top {k}."
        )
    return ranked[:k]


def strip_categories(index: DatasetIndex, keep: Iterable[int]) -> DatasetIndex:
    """Remove every annotation whose category is not in *keep*.

    Images that lose all of their annotations are removed; images that had
    none to begin with are left alone.  The category map is restricted to
    *keep*.
    """
    keep_set = set(keep)
    if not keep_set:
        raise DomainError("strip_categories needs at least one category to keep.")
    kept_images = [
        iid
        for iid in index.image_ids
        if not index.images[iid].annotation_ids
        or any(a.category_id in keep_set for a in index.annotations_of(iid))
    ]
    stripped = index.subset(
        kept_images,
        keep_annotation=lambda a: a.category_id in keep_set,
        categories=keep_set,
    )
    logger.info(
        "Category strip kept %d categories, %d of %d images.",
        len(stripped.categories),
        len(stripped.images),
        len(index.images),
    )
    return stripped
