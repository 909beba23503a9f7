from __future__ import annotations

import math

import pytest

from longtail.coco.parser import parse_coco
from longtail.curation.filters import (
    filter_max_detections,
    select_top_k_categories,
    strip_categories,
)
from longtail.curation.longtail import enforce_longtail, longtail_targets, removal_score
from longtail.curation.zipf import zipf_targets
from longtail.errors import DomainError
from longtail.fixtures.synthetic import synthetic_coco
from longtail.models.dataset import DatasetIndex
from longtail.schemas.curation import ZipfSpec
from tests.helpers import disjoint_index, index_from_class_sets, to_bytes

# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _naive_greedy(
    index: DatasetIndex, spec: ZipfSpec, rank_order: list[int]
) -> tuple[set[int], dict[int, int]]:
    """Rescan every image after every removal; returns kept ids and class counts."""
    counts = {c: len(index.images_by_category[c]) for c in rank_order}
    k = len(rank_order)
    rarest = counts[rank_order[-1]]
    targets = {
        c: math.floor(rarest * math.exp(spec.s * (math.log(k) - math.log(n + 1))) + 0.5)
        for n, c in enumerate(rank_order)
    }
    targets[rank_order[-1]] = counts[rank_order[-1]]
    classes = {i: [c for c in index.categories_of(i) if c in targets] for i in index.images}

    remaining = set(index.images)
    while any(counts[c] > targets[c] for c in rank_order):
        best: tuple[float, int] | None = None
        for iid in remaining:
            cs = classes[iid]
            if not cs or any(counts[c] <= targets[c] for c in cs):
                continue
            score = 0.0
            for c in cs:
                score += (counts[c] - targets[c]) / max(targets[c], 1)
            if best is None or (score, iid) > best:
                best = (score, iid)
        if best is None:
            break
        remaining.remove(best[1])
        for c in classes[best[1]]:
            counts[c] -= 1
    return remaining, counts


def _prepared(images: int, seed: int, k: int = 10) -> tuple[DatasetIndex, list[int]]:
    """A capped, top-K, stripped synthetic dataset and its rank order."""
    index = parse_coco(to_bytes(synthetic_coco(images, k, seed=seed)))
    capped = filter_max_detections(index, 10)
    keep = select_top_k_categories(capped, k)
    return strip_categories(capped, keep), keep


# ---------------------------------------------------------------------------
# Tests
# ---------------------------------------------------------------------------


class TestLongtailTargets:
    """Scale and target arithmetic."""

    def test_two_class_targets(self) -> None:
        """Counts {1:100, 2:10} with s=1 give B=30 and targets (20, 10)."""
        targets = longtail_targets({1: 100, 2: 10}, zipf_targets(1.0, 2), [1, 2])
        assert targets == {1: 20, 2: 10}

    def test_rarest_target_is_its_count(self) -> None:
        """The rank-K target always equals its current count."""
        targets = longtail_targets({5: 40, 3: 33, 8: 7}, zipf_targets(1.01, 3), [5, 3, 8])
        assert targets[8] == 7

    def test_negative_exponent_targets(self) -> None:
        """s=-400 drives every non-rarest target to zero without overflowing."""
        targets = longtail_targets({1: 50, 2: 40, 3: 30}, zipf_targets(-400.0, 3), [1, 2, 3])
        assert targets == {1: 0, 2: 0, 3: 30}

    def test_exponent_beyond_float_range(self) -> None:
        """A rank ratio past float range is a domain error, not a crash."""
        with pytest.raises(DomainError, match="Zipf exponent"):
            longtail_targets({1: 100, 2: 10}, zipf_targets(1100.0, 2), [1, 2])

    def test_removal_score_ineligible(self) -> None:
        """An image with any class at target scores zero."""
        assert removal_score((1, 2), {1: 30, 2: 10}, {1: 20, 2: 10}) == 0.0

    def test_removal_score_sum(self) -> None:
        """Scores add relative surplus over classes."""
        assert removal_score((1, 2), {1: 30, 2: 15}, {1: 20, 2: 10}) == pytest.approx(1.0)


class TestEnforceLongtail:
    """Greedy Zipf surplus removal."""

    def test_fixed_point(self) -> None:
        """An index already at its targets is returned unchanged."""
        index = disjoint_index({1: 20, 2: 10})
        result, report = enforce_longtail(index, zipf_targets(1.0, 2), [1, 2])
        assert result == index
        assert report.removed_by_surplus_filter == 0

    def test_two_disjoint_classes(self) -> None:
        """{1:100, 2:10} with s=1 reduces class 1 to 20 and leaves class 2 alone."""
        index = disjoint_index({1: 100, 2: 10})
        result, report = enforce_longtail(index, zipf_targets(1.0, 2), [1, 2], seed=5)
        assert result.image_counts() == {1: 20, 2: 10}
        assert report.removed_by_surplus_filter == 80
        assert report.kept_image_count == 30
        assert report.targets == {1: 20, 2: 10}
        assert report.residual_deviation == {1: 0, 2: 0}
        assert report.seed == 5
        # Largest ids go first among equal scores.
        assert result.images_by_category[1] == tuple(range(1, 21))

    def test_rarest_class_protected_under_cooccurrence(self) -> None:
        """Images holding the rarest class survive even when other classes are in surplus."""
        index = index_from_class_sets([(1, 3)] * 5 + [(1,)] * 50 + [(2,)] * 30 + [(2, 3)] * 2)
        result, _ = enforce_longtail(index, zipf_targets(1.0, 3), [1, 2, 3])
        assert result.images_by_category[3] == index.images_by_category[3]

    def test_matches_naive_oracle(self) -> None:
        """On a 500-image co-occurring fixture the result equals a naive rescan."""
        index, keep = _prepared(500, seed=21)
        spec = zipf_targets(1.01, len(keep))
        result, report = enforce_longtail(index, spec, keep)
        kept, counts = _naive_greedy(index, spec, keep)
        assert set(result.image_ids) == kept
        assert report.per_class_image_counts == counts
        rarest = keep[-1]
        assert result.images_by_category[rarest] == index.images_by_category[rarest]

    def test_subset_of_input(self) -> None:
        """Curation never fabricates images or annotations."""
        index, keep = _prepared(300, seed=4)
        result, _ = enforce_longtail(index, zipf_targets(1.01, len(keep)), keep)
        assert set(result.images) <= set(index.images)
        assert set(result.annotations) <= set(index.annotations)

    def test_deterministic(self) -> None:
        """Two runs give equal outputs."""
        index, keep = _prepared(200, seed=8)
        spec = zipf_targets(1.01, len(keep))
        assert enforce_longtail(index, spec, keep) == enforce_longtail(index, spec, keep)

    def test_residual_deviation_reported(self) -> None:
        """Residual deviation is final count minus target for every ranked class."""
        index, keep = _prepared(300, seed=2)
        _, report = enforce_longtail(index, zipf_targets(1.01, len(keep)), keep)
        for cid in keep:
            assert report.residual_deviation[cid] == (
                report.per_class_image_counts[cid] - report.targets[cid]
            )

    def test_rank_order_length_mismatch(self) -> None:
        """The rank order must have K entries."""
        with pytest.raises(DomainError):
            enforce_longtail(disjoint_index({1: 3, 2: 2}), zipf_targets(1.0, 3), [1, 2])

    def test_empty_class_rejected(self) -> None:
        """A ranked class with no images names itself in the error."""
        index = index_from_class_sets([(1,), (1,)], categories=[1, 2])
        with pytest.raises(DomainError, match="Category 2"):
            enforce_longtail(index, zipf_targets(1.0, 2), [1, 2])

    def test_huge_exponent_rejected(self) -> None:
        """Enforcement with s=1100 stops with a domain error before removing anything."""
        with pytest.raises(DomainError, match="Zipf exponent"):
            enforce_longtail(disjoint_index({1: 100, 2: 10}), zipf_targets(1100.0, 2), [1, 2])
