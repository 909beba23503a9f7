from longtail.sampling.repeat_factor import (
    DEFAULT_THRESHOLD,
    category_repeat_factor,
    expected_epoch_length,
    repeat_factors,
)
from longtail.sampling.schedules import (
    build_schedules,
    class_aware_schedule,
    repeat_factor_schedule,
    uniform_schedule,
)
from longtail.sampling.writer import write_repeat_factors, write_schedules

__all__ = [
    "DEFAULT_THRESHOLD",
    "build_schedules",
    "category_repeat_factor",
    "class_aware_schedule",
    "expected_epoch_length",
    "repeat_factor_schedule",
    "repeat_factors",
    "uniform_schedule",
    "write_repeat_factors",
    "write_schedules",
]
