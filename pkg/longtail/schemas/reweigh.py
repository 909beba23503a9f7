from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict


class ClassWeights(BaseModel):
    """Per-class positive-term loss weights ``w_c = total / count_c``."""

    model_config = ConfigDict(frozen=True)

    weights: dict[int, float]
    source_counts: dict[int, int]


class LossPair(NamedTuple):
    """One observation: true label, predicted probability, category."""

    y: int
    p: float
    category: int


@dataclass(frozen=True)
class LossBatch:
    """A batch of observations for the reference BCE evaluations.

    Probabilities are clamped to ``[eps, 1 - eps]`` when the losses are
    evaluated, not when the batch is built.
    """

    pairs: tuple[LossPair, ...]
    _arrays: tuple[np.ndarray, np.ndarray, np.ndarray] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        y = np.fromiter((pair.y for pair in self.pairs), dtype=np.float64, count=len(self.pairs))
        p = np.fromiter((pair.p for pair in self.pairs), dtype=np.float64, count=len(self.pairs))
        c = np.fromiter((pair.category for pair in self.pairs), dtype=np.int64, count=len(self.pairs))
        object.__setattr__(self, "_arrays", (y, p, c))

    @classmethod
    def of(cls, pairs: list[tuple[int, float, int]] | list[LossPair]) -> LossBatch:
        """Build a batch from plain ``(y, p, category)`` tuples."""
        return cls(tuple(LossPair(int(y), float(p), int(c)) for y, p, c in pairs))

    @property
    def labels(self) -> np.ndarray:
        return self._arrays[0]

    @property
    def probabilities(self) -> np.ndarray:
        return self._arrays[1]

    @property
    def categories(self) -> np.ndarray:
        return self._arrays[2]

    def __len__(self) -> int:
        return len(self.pairs)
