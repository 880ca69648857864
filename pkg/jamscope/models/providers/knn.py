import numpy as np
from scipy.spatial.distance import cdist

from jamscope.util.errors import DomainError, UndefinedInputError
from .base import ClassifierProvider


def _vote(labels, distances, n_classes):
    """Majority vote; ties go to the smallest summed distance, then the lowest class index."""
    votes = np.bincount(labels, minlength=n_classes)
    summed = np.bincount(labels, weights=distances, minlength=n_classes)
    tied = np.flatnonzero(votes == votes.max())
    return int(min(tied, key=lambda c: (summed[c], c)))


def knn_predict(train_rows, train_labels, queries, k, n_classes=3):
    train_rows = np.asarray(train_rows, dtype=float)
    if train_rows.shape[0] == 0:
        raise UndefinedInputError("cannot classify against an empty training set")
    if not 1 <= k <= train_rows.shape[0]:
        raise DomainError(f"k must lie in [1, {train_rows.shape[0]}], got {k}")
    queries = np.atleast_2d(np.asarray(queries, dtype=float))
    distances = cdist(queries, train_rows, metric="euclidean")
    # stable sort keeps equidistant neighbours in training order
    nearest = np.argsort(distances, axis=1, kind="stable")[:, :k]
    train_labels = np.asarray(train_labels, dtype=int)
    return np.array([
        _vote(train_labels[nearest[i]], distances[i, nearest[i]], n_classes)
        for i in range(queries.shape[0])
    ], dtype=int)


def knn_classify(train, query, k):
    """Class index of a single query row against a FeatureMatrix."""
    return int(knn_predict(train.rows, train.labels, np.asarray(query)[None, :], k)[0])


class KNNClassifierProvider(ClassifierProvider):
    def fit(self, train):
        self.train = train
        return self

    def predict(self, rows):
        return knn_predict(self.train.rows, self.train.labels, rows, int(self.params.get("k", 5)))
