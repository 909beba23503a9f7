from __future__ import annotations

import logging
import math

from longtail.errors import DomainError
from longtail.models.dataset import DatasetIndex
from longtail.models.enums import RepeatAggregation
from longtail.schemas.sampling import RepeatFactorTable

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 1.0


def category_repeat_factor(frequency: float, t: float) -> float:
    """``max(1, sqrt(t / f_c))``."""
    return max(1.0, math.sqrt(t / frequency))


def repeat_factors(
    index: DatasetIndex,
    t: float = DEFAULT_THRESHOLD,
    aggregation: RepeatAggregation = RepeatAggregation.max,
) -> RepeatFactorTable:
    """Compute category and image repeat factors for *index*.

    Categories that appear in no image have no frequency and are left out of
    the table; they cannot influence any image's factor.

    Raises:
        DomainError: The index is empty or *t* is not positive.
    """
    if t <= 0 or not math.isfinite(t):
        raise DomainError(f"Repeat-factor threshold must be positive, got {t}.")
    n_images = len(index.images)
    if n_images == 0:
        raise DomainError("Cannot compute repeat factors for an empty dataset.")

    frequency = {
        cid: len(ids) / n_images for cid, ids in index.images_by_category.items() if ids
    }
    category_repeat = {cid: category_repeat_factor(f, t) for cid, f in frequency.items()}

    image_repeat: dict[int, float] = {}
    for iid in index.image_ids:
        factors = [category_repeat[c] for c in index.categories_of(iid)]
        if not factors:
            image_repeat[iid] = 1.0
        elif aggregation is RepeatAggregation.max:
            image_repeat[iid] = max(factors)
        else:
            image_repeat[iid] = math.fsum(factors) / len(factors)

    logger.info(
        "Repeat factors (t=%s, %s): expected epoch length %.1f for %d images.",
        t,
        aggregation.value,
        math.fsum(image_repeat.values()),
        n_images,
    )
    return RepeatFactorTable(
        t=t,
        aggregation=aggregation,
        category_frequency=frequency,
        category_repeat=category_repeat,
        image_repeat=image_repeat,
    )


def expected_epoch_length(table: RepeatFactorTable) -> float:
    """Expected number of draws per epoch, the sum of all ``r_i``."""
    return math.fsum(table.image_repeat.values())
