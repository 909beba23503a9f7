from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

import numpy as np
import pytest
from scipy import stats

from longtail.errors import DomainError
from longtail.models.dataset import DatasetIndex
from longtail.models.enums import RepeatAggregation, SamplingStrategy
from longtail.sampling.repeat_factor import repeat_factors
from longtail.sampling.schedules import (
    build_schedules,
    class_aware_schedule,
    repeat_factor_schedule,
    uniform_schedule,
)
from longtail.sampling.writer import write_repeat_factors, write_schedules
from longtail.schemas.sampling import RepeatFactorTable
from tests.helpers import disjoint_index, index_from_class_sets, make_index

# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _table(image_repeat: dict[int, float]) -> RepeatFactorTable:
    """A hand-written table with only image factors."""
    return RepeatFactorTable(
        t=1.0, category_frequency={}, category_repeat={}, image_repeat=image_repeat
    )


# ---------------------------------------------------------------------------
# Tests
# ---------------------------------------------------------------------------


class TestUniformSchedule:
    """Seeded permutations."""

    def test_single_image(self) -> None:
        """A one-image dataset yields that id."""
        index = index_from_class_sets([(1,)])
        assert uniform_schedule(index, seed=0, epoch=0).image_ids == (1,)

    def test_is_permutation(self, synthetic_index: DatasetIndex) -> None:
        """Every id appears exactly once."""
        schedule = uniform_schedule(synthetic_index, seed=3, epoch=2)
        assert sorted(schedule.image_ids) == list(synthetic_index.image_ids)
        assert schedule.strategy is SamplingStrategy.uniform
        assert schedule.epoch == 2

    def test_deterministic(self, synthetic_index: DatasetIndex) -> None:
        """Same seed and epoch, same list; another epoch reshuffles."""
        a = uniform_schedule(synthetic_index, seed=3, epoch=0)
        assert a == uniform_schedule(synthetic_index, seed=3, epoch=0)
        assert a.image_ids != uniform_schedule(synthetic_index, seed=3, epoch=1).image_ids

    def test_empty_index(self) -> None:
        """An empty dataset is a domain error."""
        with pytest.raises(DomainError):
            uniform_schedule(DatasetIndex.build([], [], {}), seed=0, epoch=0)


class TestClassAwareSchedule:
    """Two-stage class-then-image draws."""

    def test_single_class(self) -> None:
        """With one class every draw comes from its list."""
        index = index_from_class_sets([(1,), (1,), ()], categories=[1])
        schedule = class_aware_schedule(index, 500, seed=1, epoch=0)
        assert set(schedule.image_ids) <= {1, 2}

    def test_default_length(self, synthetic_index: DatasetIndex) -> None:
        """Without a length there is one draw per image."""
        schedule = class_aware_schedule(synthetic_index, None, seed=1, epoch=0)
        assert len(schedule.image_ids) == len(synthetic_index.images)
        assert set(schedule.image_ids) <= set(synthetic_index.images)

    def test_two_disjoint_classes_balanced(self) -> None:
        """Two disjoint classes each take half the draws (chi-square at 0.01)."""
        index = disjoint_index({1: 90, 2: 10})
        ids = np.asarray(class_aware_schedule(index, 100_000, seed=5, epoch=0).image_ids)
        observed = [int((ids <= 90).sum()), int((ids > 90).sum())]
        assert stats.chisquare(observed).pvalue > 0.01

    def test_class_marginals_uniform(self) -> None:
        """Image lists of sizes 100:10:1 still give uniform class marginals."""
        index = disjoint_index({1: 100, 2: 10, 3: 1})
        ids = np.asarray(class_aware_schedule(index, 300_000, seed=7, epoch=0).image_ids)
        observed = [int((ids <= 100).sum()), int(((ids > 100) & (ids <= 110)).sum()), int((ids == 111).sum())]
        assert stats.chisquare(observed).pvalue > 0.01

    def test_matches_naive_two_stage_oracle(self) -> None:
        """Class marginals agree with a naive loop sampler in distribution."""
        index = disjoint_index({1: 100, 2: 10, 3: 1})
        ids = np.asarray(class_aware_schedule(index, 60_000, seed=2, epoch=0).image_ids)
        ours = np.bincount(np.digitize(ids, [100.5, 110.5]), minlength=3)

        rng = np.random.default_rng(99)
        naive = np.zeros(3, dtype=np.int64)
        for _ in range(60_000):
            naive[int(rng.integers(0, 3))] += 1
        table = np.vstack([ours, naive])
        assert stats.chi2_contingency(table).pvalue > 0.01

    def test_deterministic(self, synthetic_index: DatasetIndex) -> None:
        """Regeneration yields the same draws."""
        a = class_aware_schedule(synthetic_index, 200, seed=4, epoch=3)
        assert a == class_aware_schedule(synthetic_index, 200, seed=4, epoch=3)

    def test_empty_category(self) -> None:
        """A category without images is a domain error."""
        index = index_from_class_sets([(1,)], categories=[1, 2])
        with pytest.raises(DomainError):
            class_aware_schedule(index, 10, seed=0, epoch=0)


class TestRepeatFactorSchedule:
    """Stochastic rounding followed by a shuffle."""

    def test_unit_factors_are_permutation(self, synthetic_index: DatasetIndex) -> None:
        """All r_i = 1 gives each image once."""
        table = _table(dict.fromkeys(synthetic_index.images, 1.0))
        schedule = repeat_factor_schedule(synthetic_index, table, seed=0, epoch=0)
        assert sorted(schedule.image_ids) == list(synthetic_index.image_ids)

    def test_integer_factor(self) -> None:
        """A single image with r_i = 2 appears exactly twice."""
        index = index_from_class_sets([(1,)])
        schedule = repeat_factor_schedule(index, _table({1: 2.0}), seed=0, epoch=0)
        assert schedule.image_ids == (1, 1)

    def test_fractional_expectation(self) -> None:
        """r_i = 1.5 averages 1.5 occurrences over 10,000 epochs within 2%."""
        index = index_from_class_sets([(1,)])
        table = _table({1: 1.5})
        total = sum(
            len(repeat_factor_schedule(index, table, seed=13, epoch=e).image_ids)
            for e in range(10_000)
        )
        assert total / 10_000 == pytest.approx(1.5, rel=0.02)

    @pytest.mark.parametrize("aggregation", list(RepeatAggregation))
    def test_per_image_expectation(
        self, synthetic_200: DatasetIndex, aggregation: RepeatAggregation
    ) -> None:
        """Over 10,000 epochs each image's mean occurrence is within 2% of r_i."""
        table = repeat_factors(synthetic_200, 1.0, aggregation)
        ids = np.asarray(synthetic_200.image_ids)
        counts = np.zeros(int(ids.max()) + 1, dtype=np.int64)
        epochs = 10_000
        for epoch in range(epochs):
            schedule = repeat_factor_schedule(synthetic_200, table, seed=1, epoch=epoch)
            counts += np.bincount(np.asarray(schedule.image_ids), minlength=len(counts))
        expected = np.asarray([table.image_repeat[int(i)] for i in ids])
        np.testing.assert_allclose(counts[ids] / epochs, expected, rtol=0.02)

    def test_equal_frequencies_degenerate_to_uniform(self) -> None:
        """Equal f_c with t <= f_c yields one copy of every image."""
        index = index_from_class_sets([(1,), (2,), (1,), (2,)])
        table = repeat_factors(index, t=0.5)
        schedule = repeat_factor_schedule(index, table, seed=0, epoch=0)
        assert len(schedule.image_ids) == len(index.images)

    def test_mismatched_table(self) -> None:
        """A table for other images is rejected."""
        index = index_from_class_sets([(1,), (1,)])
        with pytest.raises(DomainError):
            repeat_factor_schedule(index, _table({1: 1.0}), seed=0, epoch=0)

    def test_copies_independent_of_other_images(self) -> None:
        """Dropping images, the largest id included, leaves other images' copy counts alone."""
        index = index_from_class_sets([(1,)] * 30)
        smaller = index.subset([i for i in index.image_ids if i not in (7, 30)])
        full_table = _table(dict.fromkeys(index.images, 1.5))
        small_table = _table(dict.fromkeys(smaller.images, 1.5))
        for epoch in range(20):
            full = Counter(
                repeat_factor_schedule(index, full_table, seed=3, epoch=epoch).image_ids
            )
            part = Counter(
                repeat_factor_schedule(smaller, small_table, seed=3, epoch=epoch).image_ids
            )
            assert {i: full[i] for i in smaller.images} == {i: part[i] for i in smaller.images}

    def test_negative_image_id_rejected(self) -> None:
        """Negative image ids are rejected."""
        index = make_index([(-1, 10, 10), (2, 10, 10)], [(1, 2, 1, [0, 0, 5, 5])], [1])
        with pytest.raises(DomainError, match="non-negative"):
            repeat_factor_schedule(index, _table({-1: 1.0, 2: 1.0}), seed=0, epoch=0)

    def test_deterministic(self, synthetic_index: DatasetIndex) -> None:
        """Same (seed, epoch) gives the same schedule."""
        table = repeat_factors(synthetic_index)
        a = repeat_factor_schedule(synthetic_index, table, seed=8, epoch=4)
        assert a == repeat_factor_schedule(synthetic_index, table, seed=8, epoch=4)


class TestBuildAndWrite:
    """Multi-epoch generation and the JSON-lines file."""

    @pytest.mark.parametrize("strategy", list(SamplingStrategy))
    def test_one_schedule_per_epoch(
        self, synthetic_index: DatasetIndex, strategy: SamplingStrategy
    ) -> None:
        """build_schedules yields epochs 0..N-1."""
        schedules = list(build_schedules(synthetic_index, strategy, 3, seed=1))
        assert [s.epoch for s in schedules] == [0, 1, 2]
        assert all(s.strategy is strategy for s in schedules)

    def test_jsonl_format(self, tmp_path: Path, synthetic_index: DatasetIndex) -> None:
        """Each line is {"epoch": e, "image_ids": [...]}."""
        path = write_schedules(
            tmp_path / "schedule.jsonl",
            build_schedules(synthetic_index, SamplingStrategy.uniform, 2, seed=0),
        )
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2
        first = json.loads(lines[0])
        assert set(first) == {"epoch", "image_ids"}
        assert first["epoch"] == 0
        assert Counter(first["image_ids"]) == Counter(synthetic_index.image_ids)

    def test_repeat_factor_file(self, tmp_path: Path, synthetic_index: DatasetIndex) -> None:
        """The repeat-factor table is written with string ids."""
        table = repeat_factors(synthetic_index)
        doc = json.loads(write_repeat_factors(tmp_path / "rf.json", table).read_text())
        assert doc["aggregation"] == "max"
        assert len(doc["image_repeat"]) == len(synthetic_index.images)
