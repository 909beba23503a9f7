from longtail.augment.engine import AugmentationEngine, AugmentConfig
from longtail.augment.geometry import MIN_AREA_RATIO, MIN_BOX_SIDE, adjust_labels, to_yolo
from longtail.augment.mixup import mixup, sample_lambda
from longtail.augment.mosaic import (
    apply_mosaic,
    center_range,
    cover_size,
    plan_mosaic,
    quadrant_rects,
    resize_source,
)
from longtail.augment.sources import default_rare_categories, pick_mixup_pair, pick_mosaic_sources

__all__ = [
    "MIN_AREA_RATIO",
    "MIN_BOX_SIDE",
    "AugmentConfig",
    "AugmentationEngine",
    "adjust_labels",
    "apply_mosaic",
    "center_range",
    "cover_size",
    "default_rare_categories",
    "mixup",
    "pick_mixup_pair",
    "pick_mosaic_sources",
    "plan_mosaic",
    "quadrant_rects",
    "resize_source",
    "sample_lambda",
    "to_yolo",
]
