from __future__ import annotations

import math

from longtail.errors import DomainError
from longtail.schemas.curation import ZipfSpec


def zipf_targets(s: float, k: int) -> ZipfSpec:
    """Return the Zipf law over ranks ``1..k`` with exponent *s*.

    ``P(n) = n**-s / sum(m**-s for m in 1..k)``.  Weights are formed in log
    space, so any finite *s* is accepted; shares too small for a float come
    out as 0.0.  The normaliser is summed with :func:`math.fsum` so the
    probabilities add to 1 within a few ulps.

    Raises:
        DomainError: *k* is below 1 or *s* is not finite.
    """
    if k < 1:
        raise DomainError(f"Zipf rank count must be at least 1, got {k}.")
    if not math.isfinite(s):
        raise DomainError(f"Zipf exponent must be finite, got {s}.")
    # Shift by the largest log-weight so the biggest term is exactly 1.
    logs = [-s * math.log(n) for n in range(1, k + 1)]
    peak = max(logs)
    weights = [math.exp(value - peak) for value in logs]
    total = math.fsum(weights)
    return ZipfSpec(s=s, k=k, probabilities=tuple(w / total for w in weights))


def round_half_up(value: float) -> int:
    """Round to the nearest integer, halves away from zero for non-negative input."""
    return math.floor(value + 0.5)
