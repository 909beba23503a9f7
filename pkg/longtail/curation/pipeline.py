from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from longtail.curation.filters import (
    filter_max_detections,
    select_top_k_categories,
    strip_categories,
)
from longtail.curation.longtail import enforce_longtail
from longtail.curation.zipf import zipf_targets
from longtail.models.dataset import DatasetIndex
from longtail.schemas.curation import CurationReport, ZipfSpec

logger = logging.getLogger(__name__)


@dataclass
class CurationResult:
    """Everything one curation run produces.

    Attributes:
        index:  The curated long-tailed dataset.
        report: Stage tallies; the removal counts reconcile with the input.
        spec:   Zipf targets used for surplus removal.
        keep:   Ranked category ids, most frequent first.
    """

    index: DatasetIndex
    report: CurationReport
    spec: ZipfSpec
    keep: list[int]


def curate(
    index: DatasetIndex,
    *,
    top_k: int = 10,
    max_detections: int = 10,
    zipf_s: float = 1.01,
    seed: int = 0,
) -> CurationResult:
    """Build a long-tailed subset of *index*.

    Stages, in order: detection cap, top-K category selection by image
    count, stripping of every other category, Zipf surplus removal.
    """
    input_count = len(index.images)

    capped = filter_max_detections(index, max_detections)
    keep = select_top_k_categories(capped, top_k)
    stripped = strip_categories(capped, keep)
    spec = zipf_targets(zipf_s, top_k)
    curated, surplus = enforce_longtail(stripped, spec, keep, seed)

    report = surplus.model_copy(
        update={
            "input_image_count": input_count,
            "removed_by_detection_cap": input_count - len(capped.images),
            "removed_by_category_strip": len(capped.images) - len(stripped.images),
        }
    )
    logger.info(
        "Curated %d -> %d images (cap -%d, strip -%d, surplus -%d).",
        input_count,
        report.kept_image_count,
        report.removed_by_detection_cap,
        report.removed_by_category_strip,
        report.removed_by_surplus_filter,
    )
    return CurationResult(index=curated, report=report, spec=spec, keep=keep)


def curate_validation(
    index: DatasetIndex, keep: Iterable[int], max_detections: int = 10
) -> DatasetIndex:
    """Apply the training cap and category strip to a validation split.

    No Zipf shaping is applied to validation data.
    """
    capped = filter_max_detections(index, max_detections)
    return strip_categories(capped, keep)
