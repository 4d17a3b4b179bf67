"""Online linear learners over a growable feature space.

All three learners share the same model shape (a dense weight vector that is
zero-extended as the vocabulary grows) and the same sign convention:
sign(0) = -1, so the freshly initialized model predicts the negative class.
"""

import json
import math
from typing import IO, Tuple

import numpy as np

from .wl import SparseVector

PA = "pa"
PERCEPTRON = "perceptron"
SGDLR = "sgdlr"
ALGORITHMS = (PA, PERCEPTRON, SGDLR)

CHECKPOINT_VERSION = 1


class ZeroVectorSample(ValueError):
    """An all-zero sample forced a division by ||x||^2 = 0 in the margin update."""


def sign(score: float) -> int:
    return 1 if score > 0 else -1


class OnlineModel:
    """Growable linear model updated one sample at a time.

    ``learning_rate`` is the perceptron step scale / the SGD eta; the
    margin-based learner ignores it (its step size is closed-form).
    """

    def __init__(self, algorithm: str = PA, learning_rate: float = 1.0):
        if algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        if learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        self.algorithm = algorithm
        self.learning_rate = learning_rate
        self.weights = np.zeros(0, dtype=np.float64)
        self.updates_made = 0
        self.samples_seen = 0

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def grow(self, new_dimension: int) -> None:
        """Zero-extend the weight vector; never shrinks."""
        if new_dimension < self.dimension:
            raise ValueError(
                f"cannot shrink model from {self.dimension} to {new_dimension}"
            )
        if new_dimension > self.dimension:
            grown = np.zeros(new_dimension, dtype=np.float64)
            grown[: self.dimension] = self.weights
            self.weights = grown

    def score(self, x: SparseVector) -> float:
        d = self.dimension
        return float(sum(self.weights[i] * v for i, v in x.items() if i < d))

    def predict(self, x: SparseVector) -> Tuple[float, int]:
        """(score, label); indices beyond the current dimension contribute 0."""
        s = self.score(x)
        return s, sign(s)

    def _ensure_capacity(self, x: SparseVector) -> None:
        if x:
            top = max(x)
            if top >= self.dimension:
                self.grow(top + 1)

    def update(self, x: SparseVector, y: int) -> bool:
        """Apply one training step; returns True if the weights changed."""
        if y not in (-1, 1):
            raise ValueError(f"label must be -1 or +1, got {y}")
        self.samples_seen += 1
        if self.algorithm == PA:
            changed = self._update_pa(x, y)
        elif self.algorithm == PERCEPTRON:
            changed = self._update_perceptron(x, y)
        else:
            changed = self._update_sgdlr(x, y)
        if changed:
            self.updates_made += 1
        return changed

    def _update_pa(self, x: SparseVector, y: int) -> bool:
        margin = y * self.score(x)
        if margin >= 1.0:
            return False
        sq_norm = sum(v * v for v in x.values())
        if sq_norm == 0.0:
            raise ZeroVectorSample("margin < 1 on an all-zero sample")
        alpha = (1.0 - margin) / sq_norm
        self._ensure_capacity(x)
        for i, v in x.items():
            self.weights[i] += alpha * y * v
        return True

    def _update_perceptron(self, x: SparseVector, y: int) -> bool:
        if sign(self.score(x)) == y:
            return False
        self._ensure_capacity(x)
        for i, v in x.items():
            self.weights[i] += self.learning_rate * y * v
        return True

    def _update_sgdlr(self, x: SparseVector, y: int) -> bool:
        # Gradient step on log(1 + exp(-y w.x)); the step never vanishes
        # exactly, so every sample counts as an update.
        z = -y * self.score(x)
        if z >= 0:
            sigma = 1.0 / (1.0 + math.exp(-z))
        else:
            e = math.exp(z)
            sigma = e / (1.0 + e)
        self._ensure_capacity(x)
        for i, v in x.items():
            self.weights[i] += self.learning_rate * y * v * sigma
        return True

    def save(self, sink: IO) -> None:
        """Checkpoint as JSON; round-trips exactly."""
        nz = np.nonzero(self.weights)[0]
        obj = {
            "format_version": CHECKPOINT_VERSION,
            "kind": "online",
            "algorithm": self.algorithm,
            "learning_rate": self.learning_rate,
            "dimension": self.dimension,
            "weights": [[int(i), float(self.weights[i])] for i in nz],
            "updates_made": self.updates_made,
            "samples_seen": self.samples_seen,
        }
        json.dump(obj, sink)

    @classmethod
    def load(cls, source: IO) -> "OnlineModel":
        obj = json.load(source)
        if obj.get("format_version") != CHECKPOINT_VERSION or obj.get("kind") != "online":
            raise ValueError("not an online-model checkpoint")
        model = cls(algorithm=obj["algorithm"], learning_rate=obj["learning_rate"])
        model.grow(obj["dimension"])
        for i, v in obj["weights"]:
            model.weights[i] = v
        model.updates_made = obj["updates_made"]
        model.samples_seen = obj["samples_seen"]
        return model
