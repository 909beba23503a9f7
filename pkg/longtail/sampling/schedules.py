from __future__ import annotations

"""Epoch schedule generators.

Every generator is a pure function of ``(index, seed, epoch)`` plus its own
parameters; the random draws come from the named streams in
:mod:`longtail.rng`, so regenerating a schedule always yields the same list.
"""

import logging
from collections.abc import Iterator

import numpy as np

from longtail.errors import DomainError
from longtail.models.dataset import DatasetIndex
from longtail.models.enums import RepeatAggregation, SamplingStrategy
from longtail.rng import Stream, stream
from longtail.sampling.repeat_factor import DEFAULT_THRESHOLD, repeat_factors
from longtail.schemas.sampling import RepeatFactorTable, SamplingSchedule

logger = logging.getLogger(__name__)


def _require_images(index: DatasetIndex) -> np.ndarray:
    if not index.images:
        raise DomainError("Cannot build a schedule for an empty dataset.")
    return np.asarray(index.image_ids, dtype=np.int64)


def uniform_schedule(index: DatasetIndex, seed: int, epoch: int) -> SamplingSchedule:
    """A seeded permutation of every image id."""
    ids = _require_images(index)
    order = stream(seed, Stream.uniform_schedule, epoch).permutation(ids)
    return SamplingSchedule(
        epoch=epoch,
        seed=seed,
        strategy=SamplingStrategy.uniform,
        image_ids=tuple(int(i) for i in order),
    )


def class_aware_schedule(
    index: DatasetIndex, length: int | None, seed: int, epoch: int
) -> SamplingSchedule:
    """Two-stage draws with replacement: a uniform class, then a uniform image of it.

    Args:
        length: Number of draws; ``None`` means one per image.

    Raises:
        DomainError: The index is empty, has no categories, or a category
            has no images.
    """
    _require_images(index)
    categories = sorted(index.categories)
    if not categories:
        raise DomainError("Class-aware sampling needs at least one category.")
    empty = [cid for cid in categories if not index.images_by_category.get(cid)]
    if empty:
        raise DomainError(f"Categories without images cannot be sampled: {empty}.")
    n = len(index.images) if length is None else length
    if n < 0:
        raise DomainError(f"Schedule length must be non-negative, got {n}.")

    rng = stream(seed, Stream.class_aware_schedule, epoch)
    lists = [np.asarray(index.images_by_category[cid], dtype=np.int64) for cid in categories]
    sizes = np.asarray([len(lst) for lst in lists], dtype=np.int64)
    picked_class = rng.integers(0, len(categories), size=n)
    picked_slot = rng.integers(0, sizes[picked_class])

    flat = np.concatenate(lists)
    offsets = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    ids = flat[offsets[picked_class] + picked_slot]
    return SamplingSchedule(
        epoch=epoch,
        seed=seed,
        strategy=SamplingStrategy.class_aware,
        image_ids=tuple(int(i) for i in ids),
    )


def repeat_factor_schedule(
    index: DatasetIndex, table: RepeatFactorTable, seed: int, epoch: int
) -> SamplingSchedule:
    """Repeat each image ``r_i`` times in expectation, then shuffle.

    Image ``i`` appears ``floor(r_i)`` times plus once more with probability
    ``frac(r_i)``.  The uniform deciding the extra copy for image id ``i`` is
    draw ``i`` of the epoch's rounding stream, so it depends only on
    ``(seed, epoch, i)``; adding or removing other images leaves it alone.
    The stream is read up to the largest image id.

    Raises:
        DomainError: *table* was not built from *index*, or an image id is
            negative.
    """
    ids = _require_images(index)
    if set(table.image_repeat) != set(index.images):
        raise DomainError("Repeat-factor table does not match the dataset's images.")
    if ids[0] < 0:
        raise DomainError(
            f"Repeat-factor sampling needs non-negative image ids, got {int(ids[0])}."
        )

    factors = np.asarray([table.image_repeat[int(i)] for i in ids], dtype=np.float64)
    whole = np.floor(factors)
    draws = stream(seed, Stream.rfs_rounding, epoch).random(int(ids[-1]) + 1)[ids]
    copies = (whole + (draws < factors - whole)).astype(np.int64)

    multiset = np.repeat(ids, copies)
    order = stream(seed, Stream.rfs_permutation, epoch).permutation(multiset)
    return SamplingSchedule(
        epoch=epoch,
        seed=seed,
        strategy=SamplingStrategy.repeat_factor,
        image_ids=tuple(int(i) for i in order),
    )


def build_schedules(
    index: DatasetIndex,
    strategy: SamplingStrategy,
    epochs: int,
    seed: int,
    *,
    t: float = DEFAULT_THRESHOLD,
    aggregation: RepeatAggregation = RepeatAggregation.max,
    length: int | None = None,
    table: RepeatFactorTable | None = None,
) -> Iterator[SamplingSchedule]:
    """Yield schedules for epochs ``0 .. epochs - 1``."""
    if strategy is SamplingStrategy.repeat_factor and table is None:
        table = repeat_factors(index, t, aggregation)
    for epoch in range(epochs):
        if strategy is SamplingStrategy.uniform:
            schedule = uniform_schedule(index, seed, epoch)
        elif strategy is SamplingStrategy.class_aware:
            schedule = class_aware_schedule(index, length, seed, epoch)
        else:
            assert table is not None
            schedule = repeat_factor_schedule(index, table, seed, epoch)
        logger.debug("Epoch %d: %d draws (%s).", epoch, len(schedule.image_ids), strategy.value)
        yield schedule
