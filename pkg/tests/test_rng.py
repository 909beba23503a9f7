from __future__ import annotations

import numpy as np
import pytest

from longtail.rng import U64_MAX, Stream, stream


class TestStreams:
    """Named, keyed Philox streams."""

    def test_reproducible(self) -> None:
        """Equal (seed, tag, keys) give equal draws."""
        a = stream(7, Stream.uniform_schedule, 3).random(5)
        b = stream(7, Stream.uniform_schedule, 3).random(5)
        np.testing.assert_array_equal(a, b)

    def test_tags_and_keys_separate_streams(self) -> None:
        """Changing the tag or a key changes the draws."""
        base = stream(7, Stream.uniform_schedule, 3).random(5)
        assert not np.array_equal(base, stream(7, Stream.class_aware_schedule, 3).random(5))
        assert not np.array_equal(base, stream(7, Stream.uniform_schedule, 4).random(5))
        assert not np.array_equal(base, stream(8, Stream.uniform_schedule, 3).random(5))

    def test_philox_generator(self) -> None:
        """Streams run on the Philox bit generator."""
        assert isinstance(stream(0, Stream.fixture).bit_generator, np.random.Philox)

    def test_tags_are_fixed(self) -> None:
        """Stream tags are part of the output contract."""
        assert [int(t) for t in Stream] == [1, 2, 3, 4, 5, 6]

    @pytest.mark.parametrize("seed", [0, U64_MAX])
    def test_seed_range_ends(self, seed: int) -> None:
        """Both ends of the u64 range are accepted."""
        stream(seed, Stream.augment_sample, 0).random()

    @pytest.mark.parametrize("seed", [-1, U64_MAX + 1])
    def test_seed_out_of_range(self, seed: int) -> None:
        """Seeds outside u64 are rejected."""
        with pytest.raises(ValueError):
            stream(seed, Stream.augment_sample)

    def test_negative_key(self) -> None:
        """Keys must be non-negative."""
        with pytest.raises(ValueError):
            stream(0, Stream.augment_sample, -1)
