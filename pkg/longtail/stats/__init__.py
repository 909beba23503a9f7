from longtail.stats.fit import MIN_EXPECTED, zipf_fit
from longtail.stats.histogram import histogram

__all__ = ["MIN_EXPECTED", "histogram", "zipf_fit"]
