from __future__ import annotations

import math

import numpy as np

from longtail.curation.filters import rank_categories
from longtail.errors import DomainError
from longtail.models.dataset import DatasetIndex
from longtail.models.enums import MixupPairing, SourceMode
from longtail.schemas.augment import BiasSpec

Quadruple = tuple[int, int, int, int]


def default_rare_categories(index: DatasetIndex, fraction: float = 0.5) -> tuple[int, ...]:
    """The rarest ``ceil(fraction * K)`` categories with images, by image count.

    Among equal counts the larger id counts as rarer, mirroring the top-K
    tie-break.
    """
    ranked = [cid for cid, count in rank_categories(index) if count > 0]
    if not ranked:
        return ()
    n = max(1, math.ceil(fraction * len(ranked)))
    return tuple(sorted(ranked[-n:]))


def _uniform_pick(index: DatasetIndex, rng: np.random.Generator) -> int:
    ids = index.image_ids
    return ids[int(rng.integers(0, len(ids)))]


def _rare_pick(index: DatasetIndex, rare: tuple[int, ...], rng: np.random.Generator) -> int:
    cid = rare[int(rng.integers(0, len(rare)))]
    members = index.images_by_category[cid]
    return members[int(rng.integers(0, len(members)))]


def pick_mosaic_sources(
    index: DatasetIndex,
    mode: SourceMode,
    bias: BiasSpec | None,
    rng: np.random.Generator,
) -> Quadruple:
    """Choose four source image ids for one mosaic.

    ``uniform`` draws four ids independently and uniformly.  In
    ``underrep_biased`` mode each slot first flips a coin with
    ``bias.probability``; on success it draws a uniform rare class, then a
    uniform image holding it, otherwise a uniform image.

    Raises:
        DomainError: The index is empty, or biased mode has no usable rare
            categories.
    """
    if not index.images:
        raise DomainError("Cannot pick mosaic sources from an empty dataset.")
    if mode is SourceMode.uniform:
        return tuple(_uniform_pick(index, rng) for _ in range(4))  # type: ignore[return-value]

    rare = tuple(sorted(bias.rare_categories)) if bias else ()
    if not rare:
        raise DomainError("Biased mosaic sampling needs a non-empty rare-category set.")
    empty = [cid for cid in rare if not index.images_by_category.get(cid)]
    if empty:
        raise DomainError(f"Rare categories without images: {empty}.")
    assert bias is not None
    picks = []
    for _ in range(4):
        if rng.random() < bias.probability:
            picks.append(_rare_pick(index, rare, rng))
        else:
            picks.append(_uniform_pick(index, rng))
    return tuple(picks)  # type: ignore[return-value]


def pick_mixup_pair(
    index: DatasetIndex,
    mode: MixupPairing,
    rng: np.random.Generator,
    bias: BiasSpec | None = None,
) -> tuple[Quadruple, Quadruple]:
    """Source quadruples for the two mosaics of a mixup pair.

    The first always comes from the uniform picker; in ``rare_second`` mode
    the second comes from the biased picker with *bias*.
    """
    first = pick_mosaic_sources(index, SourceMode.uniform, None, rng)
    if mode is MixupPairing.rare_second:
        second = pick_mosaic_sources(index, SourceMode.underrep_biased, bias, rng)
    else:
        second = pick_mosaic_sources(index, SourceMode.uniform, None, rng)
    return first, second
