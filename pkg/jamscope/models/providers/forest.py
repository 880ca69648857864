"""
Random forest of Gini decision trees grown on bootstrap samples, with a random
subset of ceil(sqrt(n_features)) candidate features at every split.
"""
import math
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from jamscope.util.errors import DomainError
from .base import ClassifierProvider


def gini(counts):
    n = counts.sum()
    if n == 0:
        return 0.0
    p = counts / n
    return 1.0 - float(np.sum(p * p))


@dataclass
class TreeNode:
    counts: np.ndarray
    depth: int
    feature: int = -1
    threshold: float = 0.0
    left: "TreeNode" = None
    right: "TreeNode" = None

    @property
    def is_leaf(self):
        return self.left is None

    @property
    def prediction(self):
        return int(np.argmax(self.counts))


def best_split(X, y, n_classes, features, min_samples_leaf=1):
    """Lowest weighted Gini split over `features`; (cost, feature, threshold) or (inf, None, None)."""
    n = y.size
    best = (np.inf, None, None)
    onehot = np.eye(n_classes)[y]
    n_left = np.arange(1, n)
    n_right = n - n_left
    for f in features:
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        left = np.cumsum(onehot[order], axis=0)[:-1]
        right = left[-1] + onehot[order[-1]] - left
        valid = (xs[1:] > xs[:-1]) & (n_left >= min_samples_leaf) & (n_right >= min_samples_leaf)
        if not valid.any():
            continue
        g_left = 1.0 - np.sum((left / n_left[:, None]) ** 2, axis=1)
        g_right = 1.0 - np.sum((right / n_right[:, None]) ** 2, axis=1)
        cost = np.where(valid, (n_left * g_left + n_right * g_right) / n, np.inf)
        j = int(np.argmin(cost))
        if cost[j] < best[0]:
            best = (float(cost[j]), int(f), float((xs[j] + xs[j + 1]) / 2))
    return best


class DecisionTree:
    def __init__(self, n_classes=3, max_depth=None, min_samples_leaf=1, max_features="sqrt", rng=None):
        self.n_classes = n_classes
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self.root = None

    def _n_candidates(self, n_features):
        if self.max_features == "sqrt":
            return math.ceil(math.sqrt(n_features))
        if self.max_features is None:
            return n_features
        return min(int(self.max_features), n_features)

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        n_features = X.shape[1]
        m = self._n_candidates(n_features)
        self.root = TreeNode(np.bincount(y, minlength=self.n_classes), 0)
        stack = [(self.root, np.arange(y.size))]
        while stack:
            node, idx = stack.pop()
            if np.count_nonzero(node.counts) <= 1:
                continue
            if self.max_depth is not None and node.depth >= self.max_depth:
                continue
            if idx.size < 2 * self.min_samples_leaf:
                continue
            order = self.rng.permutation(n_features)
            # fall back to the remaining features when the drawn ones are all constant
            cost, feature, threshold = best_split(X[idx], y[idx], self.n_classes, order[:m], self.min_samples_leaf)
            if feature is None and m < n_features:
                cost, feature, threshold = best_split(X[idx], y[idx], self.n_classes, order[m:],
                                                      self.min_samples_leaf)
            if feature is None:
                continue
            go_left = X[idx, feature] <= threshold
            li, ri = idx[go_left], idx[~go_left]
            node.feature, node.threshold = feature, threshold
            node.left = TreeNode(np.bincount(y[li], minlength=self.n_classes), node.depth + 1)
            node.right = TreeNode(np.bincount(y[ri], minlength=self.n_classes), node.depth + 1)
            stack.append((node.left, li))
            stack.append((node.right, ri))
        return self

    def predict(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.zeros(X.shape[0], dtype=int)
        stack = [(self.root, np.arange(X.shape[0]))]
        while stack:
            node, idx = stack.pop()
            if idx.size == 0:
                continue
            if node.is_leaf:
                out[idx] = node.prediction
                continue
            go_left = X[idx, node.feature] <= node.threshold
            stack.append((node.left, idx[go_left]))
            stack.append((node.right, idx[~go_left]))
        return out

    def depth(self):
        deepest, stack = 0, [self.root]
        while stack:
            node = stack.pop()
            deepest = max(deepest, node.depth)
            if not node.is_leaf:
                stack.extend([node.left, node.right])
        return deepest


def _fit_tree(X, y, seed_seq, n_classes, max_depth, min_samples_leaf, max_features, bootstrap):
    rng = np.random.default_rng(seed_seq)
    if bootstrap:
        sample = rng.integers(0, y.size, size=y.size)
        X, y = X[sample], y[sample]
    tree = DecisionTree(n_classes, max_depth, min_samples_leaf, max_features, rng)
    return tree.fit(X, y)


class RandomForest:
    def __init__(self, n_trees=100, max_depth=None, min_samples_leaf=1, max_features="sqrt", seed=0,
                 bootstrap=True, n_jobs=1, n_classes=3):
        if n_trees < 1:
            raise DomainError(f"n_trees must be >= 1, got {n_trees}")
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.seed = seed
        self.bootstrap = bootstrap
        self.n_jobs = n_jobs
        self.n_classes = n_classes
        self.trees = []

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        # one independent stream per tree, so results do not depend on n_jobs
        streams = np.random.SeedSequence(self.seed).spawn(self.n_trees)
        self.trees = Parallel(n_jobs=self.n_jobs)(
            delayed(_fit_tree)(X, y, s, self.n_classes, self.max_depth, self.min_samples_leaf,
                               self.max_features, self.bootstrap)
            for s in streams
        )
        return self

    def tree_votes(self, X):
        return np.stack([tree.predict(X) for tree in self.trees])

    def vote_counts(self, X):
        votes = self.tree_votes(X)
        return np.stack([np.bincount(votes[:, i], minlength=self.n_classes) for i in range(votes.shape[1])])

    def predict(self, X):
        # argmax returns the first maximum, i.e. the lowest class index on ties
        return np.argmax(self.vote_counts(X), axis=1)


def _seed_from(rng):
    if isinstance(rng, np.random.Generator):
        return int(rng.integers(0, 2**63 - 1))
    return rng


def rf_train(train, n_trees=100, max_depth=None, rng=0, min_samples_leaf=1, max_features="sqrt", n_jobs=1):
    forest = RandomForest(n_trees=n_trees, max_depth=max_depth, min_samples_leaf=min_samples_leaf,
                          max_features=max_features, seed=_seed_from(rng), n_jobs=n_jobs)
    return forest.fit(train.rows, train.labels)


def rf_classify(forest, query):
    query = np.asarray(query, dtype=float)
    if query.ndim == 1:
        return int(forest.predict(query[None, :])[0])
    return forest.predict(query)


class ForestClassifierProvider(ClassifierProvider):
    def fit(self, train):
        p = self.params
        self.forest = rf_train(
            train,
            n_trees=int(p.get("n_trees", 100)),
            max_depth=p.get("max_depth"),
            rng=int(p.get("seed", 0)),
            min_samples_leaf=int(p.get("min_samples_leaf", 1)),
            max_features=p.get("max_features", "sqrt"),
            n_jobs=int(p.get("n_jobs", 1)),
        )
        return self

    def predict(self, rows):
        return self.forest.predict(rows)
