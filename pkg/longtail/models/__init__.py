from longtail.models.dataset import DatasetIndex
from longtail.models.enums import (
    AugmentMode,
    MixupPairing,
    RepeatAggregation,
    SamplingStrategy,
    SourceMode,
    ViolationRule,
)

__all__ = [
    "AugmentMode",
    "DatasetIndex",
    "MixupPairing",
    "RepeatAggregation",
    "SamplingStrategy",
    "SourceMode",
    "ViolationRule",
]
