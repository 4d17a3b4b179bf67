"""Window-trained linear baseline over a frozen feature space.

The objective is the usual L2-regularized hinge loss (linear SVM), minimized
by deterministic full-batch subgradient descent with an eta/sqrt(t) step.
Logistic loss is available as a config alternative. The returned weights are
the best iterate seen, so the reported loss series is non-increasing by
construction (plain subgradient steps do not guarantee monotone descent).
"""

import json
from dataclasses import dataclass, field
from typing import IO, List, Sequence, Tuple

import numpy as np
from scipy import sparse

from .online import sign
from .wl import SparseVector

HINGE = "hinge"
LOGISTIC = "logistic"

CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 200
    learning_rate: float = 0.5
    l2: float = 1e-4
    seed: int = 42
    loss: str = HINGE

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.l2 < 0:
            raise ValueError("l2 must be >= 0")
        if self.loss not in (HINGE, LOGISTIC):
            raise ValueError(f"unknown loss {self.loss!r}")


@dataclass
class BatchModel:
    weights: np.ndarray
    bias: float
    frozen_vocab_size: int
    config: TrainConfig
    single_class: bool = False
    loss_history: List[float] = field(default_factory=list)

    def save(self, sink: IO) -> None:
        nz = np.nonzero(self.weights)[0]
        obj = {
            "format_version": CHECKPOINT_VERSION,
            "kind": "batch",
            "frozen_vocab_size": self.frozen_vocab_size,
            "bias": float(self.bias),
            "weights": [[int(i), float(self.weights[i])] for i in nz],
            "single_class": self.single_class,
            "config": {
                "epochs": self.config.epochs,
                "learning_rate": self.config.learning_rate,
                "l2": self.config.l2,
                "seed": self.config.seed,
                "loss": self.config.loss,
            },
        }
        json.dump(obj, sink)

    @classmethod
    def load(cls, source: IO) -> "BatchModel":
        obj = json.load(source)
        if obj.get("format_version") != CHECKPOINT_VERSION or obj.get("kind") != "batch":
            raise ValueError("not a batch-model checkpoint")
        cfg = TrainConfig(**obj["config"])
        w = np.zeros(obj["frozen_vocab_size"], dtype=np.float64)
        for i, v in obj["weights"]:
            w[i] = v
        return cls(
            weights=w,
            bias=obj["bias"],
            frozen_vocab_size=obj["frozen_vocab_size"],
            config=cfg,
            single_class=obj["single_class"],
        )


def _to_csr(vectors: Sequence[SparseVector], dimension: int) -> sparse.csr_matrix:
    data, indices, indptr = [], [], [0]
    for x in vectors:
        for i in sorted(x):
            indices.append(i)
            data.append(x[i])
        indptr.append(len(indices))
    return sparse.csr_matrix(
        (np.array(data, dtype=np.float64), indices, indptr),
        shape=(len(vectors), dimension),
    )


def objective(
    w: np.ndarray, b: float, X: sparse.csr_matrix, y: np.ndarray, config: TrainConfig
) -> float:
    """Regularized mean loss; the bias is not regularized."""
    margins = y * (X @ w + b)
    if config.loss == HINGE:
        loss = np.maximum(0.0, 1.0 - margins).mean()
    else:
        loss = np.logaddexp(0.0, -margins).mean()
    return float(loss + 0.5 * config.l2 * (w @ w))


def gradient(
    w: np.ndarray, b: float, X: sparse.csr_matrix, y: np.ndarray, config: TrainConfig
) -> Tuple[np.ndarray, float]:
    """(Sub)gradient of ``objective`` at (w, b)."""
    n = X.shape[0]
    margins = y * (X @ w + b)
    if config.loss == HINGE:
        coef = np.where(margins < 1.0, -y, 0.0) / n
    else:
        coef = -y / (1.0 + np.exp(np.clip(margins, -500, 500))) / n
    grad_w = X.T @ coef + config.l2 * w
    grad_b = float(coef.sum())
    return np.asarray(grad_w).ravel(), grad_b


def train_batch(
    samples: Sequence[Tuple[SparseVector, int]],
    dimension: int,
    config: TrainConfig = TrainConfig(),
) -> BatchModel:
    """Train on a fixed window; deterministic for a given config.

    A single-class window is allowed (the bias carries the model toward the
    constant prediction) but is flagged on the returned model.
    """
    if not samples:
        raise ValueError("cannot train on an empty sample list")
    vectors = [x for x, _ in samples]
    labels = np.array([y for _, y in samples], dtype=np.float64)
    for x in vectors:
        if x and max(x) >= dimension:
            raise ValueError(f"sample index {max(x)} >= dimension {dimension}")
    X = _to_csr(vectors, dimension)

    w = np.zeros(dimension, dtype=np.float64)
    b = 0.0
    best_w, best_b = w.copy(), b
    best_loss = objective(w, b, X, labels, config)
    history = [best_loss]
    for t in range(1, config.epochs + 1):
        gw, gb = gradient(w, b, X, labels, config)
        step = config.learning_rate / np.sqrt(t)
        w -= step * gw
        b -= step * gb
        loss = objective(w, b, X, labels, config)
        if loss < best_loss:
            best_loss = loss
            best_w, best_b = w.copy(), b
        history.append(best_loss)

    return BatchModel(
        weights=best_w,
        bias=best_b,
        frozen_vocab_size=dimension,
        config=config,
        single_class=len(set(labels.tolist())) < 2,
        loss_history=history,
    )


def predict_batch(model: BatchModel, x: SparseVector) -> Tuple[float, int]:
    """(score, label); feature indices past the frozen space are dropped."""
    d = model.frozen_vocab_size
    score = model.bias + sum(model.weights[i] * v for i, v in x.items() if i < d)
    return float(score), sign(score)
