from longtail.curation.filters import (
    filter_max_detections,
    rank_categories,
    select_top_k_categories,
    strip_categories,
)
from longtail.curation.longtail import enforce_longtail, longtail_targets, removal_score
from longtail.curation.pipeline import CurationResult, curate, curate_validation
from longtail.curation.zipf import round_half_up, zipf_targets

__all__ = [
    "CurationResult",
    "curate",
    "curate_validation",
    "enforce_longtail",
    "filter_max_detections",
    "longtail_targets",
    "rank_categories",
    "removal_score",
    "round_half_up",
    "select_top_k_categories",
    "strip_categories",
    "zipf_targets",
]
