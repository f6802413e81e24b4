"""Prediction container shared by every localization method."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Prediction:
    """Per-node source scores plus the binary source decision."""
    scores: np.ndarray
    sources: np.ndarray

    def __post_init__(self):
        if self.scores.shape != self.sources.shape:
            raise ValueError("scores and sources must have the same length")

    @property
    def source_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.sources)

    @classmethod
    def from_nodes(cls, n: int, nodes) -> "Prediction":
        """Set-valued prediction: score 1 for chosen nodes, 0 elsewhere."""
        sources = np.zeros(n, dtype=bool)
        sources[list(nodes)] = True
        return cls(scores=sources.astype(np.float64), sources=sources)
