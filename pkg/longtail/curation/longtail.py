from __future__ import annotations

"""Zipf-driven surplus removal.

Given the rank order of the kept categories and a :class:`ZipfSpec`, each
class ``c`` at rank ``n`` gets a target image count
``T_c = round_half_up(P(n) * B)``, where the scale ``B`` is chosen so the
rank-K class keeps every image it has (``T_K`` equals its current count).

Images are then removed greedily.  An image is *eligible* only while every
class it contains is strictly above target; its removal score is

    sum over its classes c of (count_c - T_c) / T_c

and the eligible image with the highest score goes first, ties broken by the
larger image id.  Removal stops once no class is above target or no image is
eligible.  Because the rank-K class sits exactly at its target, no image
holding it is ever removed.
"""

import heapq
import logging
import math
from collections import defaultdict
from collections.abc import Sequence

from longtail.curation.zipf import round_half_up
from longtail.errors import DomainError
from longtail.models.dataset import DatasetIndex
from longtail.schemas.curation import CurationReport, ZipfSpec

logger = logging.getLogger(__name__)


def longtail_targets(counts: dict[int, int], spec: ZipfSpec, rank_order: Sequence[int]) -> dict[int, int]:
    """Per-class image targets for *rank_order* under *spec*.

    *counts* maps each ranked category to its current image count.  The
    ratio ``P(n) / P(K)`` is evaluated as ``(K / n) ** s`` in log space so a
    rank-K share that underflowed to zero still yields usable targets.

    Raises:
        DomainError: A ratio is too large to represent as a float.
    """
    rarest = rank_order[-1]
    log_k = math.log(len(rank_order))
    targets: dict[int, int] = {}
    for n, cid in enumerate(rank_order, start=1):
        try:
            target = counts[rarest] * math.exp(spec.s * (log_k - math.log(n)))
        except OverflowError:
            target = math.inf
        if not math.isfinite(target):
            raise DomainError(
                f"Zipf exponent s={spec.s} puts rank {n} beyond float range relative to rank "
                f"{len(rank_order)}; choose a smaller exponent."
            )
        targets[cid] = round_half_up(target)
    targets[rarest] = counts[rarest]
    return targets


def removal_score(
    classes: Sequence[int], counts: dict[int, int], targets: dict[int, int]
) -> float:
    """Score of removing an image holding *classes* (ascending ids, ranked only).

    Returns 0.0 when the image is not eligible, i.e. when any of its classes
    is at or below target.
    """
    score = 0.0
    for cid in classes:
        surplus = counts[cid] - targets[cid]
        if surplus <= 0:
            return 0.0
        score += surplus / max(targets[cid], 1)
    return score


def _check_inputs(index: DatasetIndex, spec: ZipfSpec, rank_order: Sequence[int]) -> None:
    if len(rank_order) != spec.k:
        raise DomainError(f"rank_order has {len(rank_order)} categories but the spec has K={spec.k}.")
    if len(set(rank_order)) != len(rank_order):
        raise DomainError("rank_order contains duplicate categories.")
    for cid in rank_order:
        if cid not in index.categories:
            raise DomainError(f"Category {cid} is not present in the dataset.")
        if not index.images_by_category.get(cid):
            name = index.categories[cid]
            raise DomainError(f"Category {cid} ('{name}') has no images left after filtering.")


def enforce_longtail(
    index: DatasetIndex,
    spec: ZipfSpec,
    rank_order: Sequence[int],
    seed: int = 0,
) -> tuple[DatasetIndex, CurationReport]:
    """Remove surplus images so per-class image counts follow *spec*.

    The removal order is fully determined by the scores and the id
    tie-break; *seed* is recorded in the report for provenance.

    Args:
        index: Dataset already reduced to the ranked categories.
        spec: Zipf targets, ``spec.k == len(rank_order)``.
        rank_order: Category ids from most to least frequent.
        seed: Run seed, recorded only.

    Returns:
        The reduced index and a report with targets and residual deviation.

    Raises:
        DomainError: Inputs disagree with *spec* or a ranked class is empty.
    """
    _check_inputs(index, spec, rank_order)
    ranked = set(rank_order)
    counts = {cid: len(index.images_by_category[cid]) for cid in rank_order}
    targets = longtail_targets(counts, spec, rank_order)

    # Images sharing a class set share a score, so the greedy runs over class
    # sets; within one, the largest image id goes first.
    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for iid in index.image_ids:
        classes = tuple(c for c in index.categories_of(iid) if c in ranked)
        if classes:
            groups[classes].append(iid)
    over = {cid for cid in rank_order if counts[cid] > targets[cid]}

    heap: list[tuple[float, int, tuple[int, ...]]] = []
    for classes, members in groups.items():
        score = removal_score(classes, counts, targets)
        if score > 0:
            heap.append((-score, -members[-1], classes))
    heapq.heapify(heap)

    removed: set[int] = set()
    while over and heap:
        neg_score, neg_top, classes = heapq.heappop(heap)
        members = groups[classes]
        score = removal_score(classes, counts, targets)
        if not members or score <= 0:
            continue
        if score != -neg_score or members[-1] != -neg_top:
            # Scores only shrink, so a stale entry is re-queued at its current value.
            heapq.heappush(heap, (-score, -members[-1], classes))
            continue
        removed.add(members.pop())
        for cid in classes:
            counts[cid] -= 1
            if counts[cid] <= targets[cid]:
                over.discard(cid)
        if members:
            next_score = removal_score(classes, counts, targets)
            if next_score > 0:
                heapq.heappush(heap, (-next_score, -members[-1], classes))

    result = index.subset(iid for iid in index.image_ids if iid not in removed)
    final_counts = result.image_counts()
    instance_counts = result.instance_counts()
    report = CurationReport(
        input_image_count=len(index.images),
        kept_image_count=len(result.images),
        removed_by_surplus_filter=len(removed),
        per_class_image_counts={cid: final_counts.get(cid, 0) for cid in rank_order},
        per_class_instance_counts={cid: instance_counts.get(cid, 0) for cid in rank_order},
        rank_order=list(rank_order),
        targets=targets,
        residual_deviation={cid: final_counts.get(cid, 0) - targets[cid] for cid in rank_order},
        zipf_s=spec.s,
        seed=seed,
    )
    logger.info(
        "Surplus filter removed %d of %d images; residual deviation %s.",
        len(removed),
        len(index.images),
        report.residual_deviation,
    )
    return result, report
