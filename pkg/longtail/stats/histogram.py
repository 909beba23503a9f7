from __future__ import annotations

import logging

from longtail.curation.filters import rank_categories
from longtail.models.dataset import DatasetIndex
from longtail.schemas.stats import ClassHistogram

logger = logging.getLogger(__name__)


def histogram(index: DatasetIndex) -> ClassHistogram:
    """Count images and instances per category of *index*.

    Every declared category appears, with zeros when it has no annotations.
    Crowd regions are not counted.
    """
    image_counts = index.image_counts()
    instance_counts = index.instance_counts()
    order = tuple(cid for cid, _ in rank_categories(index))
    logger.debug("Histogram over %d categories, %d images.", len(order), len(index.images))
    return ClassHistogram(
        per_class_image_count={cid: image_counts[cid] for cid in sorted(image_counts)},
        per_class_instance_count={cid: instance_counts.get(cid, 0) for cid in sorted(image_counts)},
        order=order,
        names=dict(sorted(index.categories.items())),
    )
