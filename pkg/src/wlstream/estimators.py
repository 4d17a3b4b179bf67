"""scikit-learn style wrappers so the feature map and the online learners
compose with the wider ecosystem (pipelines, grid search, metrics)."""

import numpy as np
from scipy import sparse
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import wl
from .online import OnlineModel
from .wl import Vocabulary, WlConfig


class WLGraphVectorizer(TransformerMixin, BaseEstimator):
    """Turns labeled graphs into sparse count matrices of enriched labels.

    ``fit`` builds a fresh vocabulary; ``partial_fit`` grows it in place, so
    already-assigned columns keep their meaning across batches. ``transform``
    drops features the vocabulary has not seen.
    """

    def __init__(self, h: int = 2):
        self.h = h

    def fit(self, X, y=None):
        self.vocabulary_ = Vocabulary()
        return self.partial_fit(X)

    def partial_fit(self, X, y=None):
        if not hasattr(self, "vocabulary_"):
            self.vocabulary_ = Vocabulary()
        wl.extract_vocab(X, WlConfig(h=self.h), self.vocabulary_)
        return self

    def transform(self, X):
        check_is_fitted(self, "vocabulary_")
        config = WlConfig(h=self.h)
        data, indices, indptr = [], [], [0]
        for g in X:
            vec = wl.vectorize(g, config, self.vocabulary_)
            for i in sorted(vec):
                indices.append(i)
                data.append(vec[i])
            indptr.append(len(indices))
        return sparse.csr_matrix(
            (np.array(data, dtype=np.float64), indices, indptr),
            shape=(len(indptr) - 1, len(self.vocabulary_)),
        )

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "vocabulary_")
        return np.array([f for f, _ in self.vocabulary_.items()], dtype=object)


class OnlineLinearClassifier(ClassifierMixin, BaseEstimator):
    """Mistake-driven linear classifier whose dimensionality may grow between
    ``partial_fit`` calls (new columns start at weight zero)."""

    def __init__(self, algorithm: str = "pa", learning_rate: float = 1.0):
        self.algorithm = algorithm
        self.learning_rate = learning_rate

    def _rows(self, X):
        X = sparse.csr_matrix(X)
        for r in range(X.shape[0]):
            start, end = X.indptr[r], X.indptr[r + 1]
            yield {int(i): float(v) for i, v in zip(X.indices[start:end], X.data[start:end])}

    def partial_fit(self, X, y, classes=None):
        if not hasattr(self, "model_"):
            self.model_ = OnlineModel(self.algorithm, self.learning_rate)
            self.classes_ = np.array([-1, 1])
        X = sparse.csr_matrix(X)
        self.model_.grow(max(self.model_.dimension, X.shape[1]))
        for x, label in zip(self._rows(X), y):
            self.model_.update(x, int(label))
        return self

    def fit(self, X, y):
        if hasattr(self, "model_"):
            del self.model_
        return self.partial_fit(X, y)

    def decision_function(self, X):
        check_is_fitted(self, "model_")
        return np.array([self.model_.score(x) for x in self._rows(X)])

    def predict(self, X):
        scores = self.decision_function(X)
        return np.where(scores > 0, 1, -1)
