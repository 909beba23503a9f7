from __future__ import annotations

import json
import logging
from pathlib import Path

from longtail.errors import DomainError
from longtail.models.dataset import DatasetIndex
from longtail.schemas.reweigh import ClassWeights

logger = logging.getLogger(__name__)


def class_weights(index: DatasetIndex) -> ClassWeights:
    """Inverse-frequency weights from non-crowd instance counts.

    ``w_c = (sum_k count_k) / count_c``, so ``sum_c (count_c / total) * w_c``
    equals the number of classes and the rarest class gets the largest
    weight.

    Raises:
        DomainError: The index has no categories or a category has no instances.
    """
    counts = index.instance_counts()
    if not counts:
        raise DomainError("Cannot compute class weights without categories.")
    empty = sorted(cid for cid, n in counts.items() if n == 0)
    if empty:
        raise DomainError(f"Categories without instances cannot be weighted: {empty}.")
    total = sum(counts.values())
    weights = {cid: total / counts[cid] for cid in sorted(counts)}
    logger.info("Class weights over %d instances: %s", total, weights)
    return ClassWeights(weights=weights, source_counts=dict(sorted(counts.items())))


def write_weights(path: Path, weights: ClassWeights) -> Path:
    """Write ``{category_id: weight}`` JSON, ids ascending."""
    doc = {str(cid): weights.weights[cid] for cid in sorted(weights.weights)}
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    logger.info("Weights written: %s", path)
    return path
