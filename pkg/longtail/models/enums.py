from __future__ import annotations

from enum import Enum


class SamplingStrategy(str, Enum):
    """How an epoch's image order is produced."""

    uniform = "uniform"
    class_aware = "class_aware"
    repeat_factor = "repeat_factor"


class RepeatAggregation(str, Enum):
    """How per-category repeat factors combine into a per-image factor."""

    max = "max"
    mean = "mean"


class SourceMode(str, Enum):
    """How the four mosaic sources are drawn."""

    uniform = "uniform"
    underrep_biased = "underrep_biased"


class MixupPairing(str, Enum):
    """How the second mosaic of a mixup pair is drawn."""

    uniform = "uniform"
    rare_second = "rare_second"


class AugmentMode(str, Enum):
    """Which augmentations the engine composes per sample."""

    mosaic = "mosaic"
    mosaic_mixup = "mosaic+mixup"


class ViolationRule(str, Enum):
    """Invariants checked by :func:`longtail.coco.validator.validate`."""

    bbox_positive = "bbox_positive"
    bbox_in_bounds = "bbox_in_bounds"
    image_positive_size = "image_positive_size"
    image_reference = "image_reference"
    category_reference = "category_reference"
    annotation_listing = "annotation_listing"
    category_listing = "category_listing"
    duplicate_listing = "duplicate_listing"
    listing_order = "listing_order"
