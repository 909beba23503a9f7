from __future__ import annotations

"""Named, versioned random streams.

Every random decision in the toolkit is drawn from numpy's counter-based
Philox bit generator (4x64, 10 rounds) keyed through a
:class:`numpy.random.SeedSequence` built from the user seed and a spawn key
``(stream, *keys)``.  The stream tags below are part of the file contract:
changing one changes every schedule or augmentation produced with it, so
they are versioned together with :data:`RNG_ALGORITHM`.

Usage::

    rng = stream(seed, Stream.uniform_schedule, epoch)
    order = rng.permutation(ids)
"""

from enum import IntEnum

import numpy as np

RNG_ALGORITHM = "philox4x64-10+seedsequence/v1"

U64_MAX = 2**64 - 1


class Stream(IntEnum):
    """Fixed stream tags; the first element of every spawn key."""

    uniform_schedule = 1
    class_aware_schedule = 2
    rfs_rounding = 3
    rfs_permutation = 4
    augment_sample = 5
    fixture = 6


def stream(seed: int, tag: Stream, *keys: int) -> np.random.Generator:
    """Return the generator for ``(seed, tag, *keys)``.

    Args:
        seed: User seed in ``[0, 2**64 - 1]``.
        tag: Which concern the stream belongs to.
        keys: Further non-negative integers (epoch, sample index, ...).

    Raises:
        ValueError: If *seed* or any key is negative or *seed* exceeds u64.
    """
    if not 0 <= seed <= U64_MAX:
        raise ValueError(f"Seed {seed} is outside the unsigned 64-bit range.")
    if any(k < 0 for k in keys):
        raise ValueError(f"Stream keys must be non-negative, got {keys}.")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(int(tag), *map(int, keys)))
    return np.random.Generator(np.random.Philox(sequence))
