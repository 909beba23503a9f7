from __future__ import annotations

import numpy as np

from longtail.errors import DomainError
from longtail.schemas.reweigh import ClassWeights, LossBatch

PROB_EPSILON = 1e-7


def _clamped(batch: LossBatch) -> tuple[np.ndarray, np.ndarray]:
    if len(batch) == 0:
        raise DomainError("Loss batch must hold at least one observation.")
    p = np.clip(batch.probabilities, PROB_EPSILON, 1.0 - PROB_EPSILON)
    return batch.labels, p


def bce(batch: LossBatch) -> float:
    """Mean binary cross-entropy ``-(1/N) sum[y ln p + (1 - y) ln(1 - p)]``."""
    y, p = _clamped(batch)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log1p(-p)))


def weighted_bce(batch: LossBatch, weights: ClassWeights, *, symmetric: bool = False) -> float:
    """Class-weighted binary cross-entropy.

    The class weight scales the positive term only:
    ``-(1/N) sum[w_c y ln p + (1 - y) ln(1 - p)]``.  With ``symmetric=True``
    it scales both terms.

    Raises:
        DomainError: A batch category has no weight.
    """
    y, p = _clamped(batch)
    missing = sorted({int(c) for c in batch.categories} - set(weights.weights))
    if missing:
        raise DomainError(f"No class weight for categories {missing}.")
    w = np.asarray([weights.weights[int(c)] for c in batch.categories], dtype=np.float64)
    positive = w * y * np.log(p)
    negative = (1.0 - y) * np.log1p(-p)
    if symmetric:
        negative = w * negative
    return float(-np.mean(positive + negative))
