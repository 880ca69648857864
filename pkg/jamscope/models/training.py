"""
Feature matrices, the stratified train/test split, min-max scaling and the
confusion matrix used to score the classifiers.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from jamscope.sim.scenario import CLASS_NAMES
from jamscope.util.errors import DomainError, ShapeError, StratificationError, UndefinedInputError


class FeatureSet(str, Enum):
    WITH_VRS = "with_vrs"
    WITHOUT_VRS = "without_vrs"

    @property
    def columns(self):
        base = ["rssi_dbm", "sinr_db", "pdr", "delta_u_mps"]
        return base + ["vrs"] if self == FeatureSet.WITH_VRS else base

    @classmethod
    def for_vrs(cls, use_vrs):
        return cls.WITH_VRS if use_vrs else cls.WITHOUT_VRS


@dataclass
class FeatureMatrix:
    rows: np.ndarray
    labels: np.ndarray
    feature_set: FeatureSet
    # position of each row in the source observation table
    source_index: np.ndarray = None

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float)
        self.labels = np.asarray(self.labels, dtype=int)
        if self.rows.ndim != 2 or self.rows.shape[1] != len(self.feature_set.columns):
            raise ShapeError(f"expected {len(self.feature_set.columns)} feature columns, got shape {self.rows.shape}")
        if self.labels.shape[0] != self.rows.shape[0]:
            raise ShapeError("one label per row required")
        if not np.all(np.isfinite(self.rows)):
            raise UndefinedInputError("feature matrix contains missing or non-finite values")
        if self.source_index is None:
            self.source_index = np.arange(self.rows.shape[0])

    def __len__(self):
        return self.rows.shape[0]

    def take(self, idx):
        idx = np.asarray(idx, dtype=int)
        return FeatureMatrix(self.rows[idx], self.labels[idx], self.feature_set, self.source_index[idx])

    def class_counts(self):
        return np.bincount(self.labels, minlength=len(CLASS_NAMES))

    @classmethod
    def from_frame(cls, df, feature_set):
        labels = df["class"].map({name: i for i, name in enumerate(CLASS_NAMES)})
        if labels.isna().any():
            unknown = sorted(set(df["class"][labels.isna()]))
            raise UndefinedInputError(f"unknown class labels {unknown}")
        return cls(df[feature_set.columns].to_numpy(dtype=float), labels.to_numpy(dtype=int), feature_set)


@dataclass
class SplitConfig:
    train_fraction: float = 0.3
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not 0 < self.train_fraction < 1:
            raise DomainError(f"train_fraction must lie in (0, 1), got {self.train_fraction}")


def split_train_test(matrix, config):
    """Disjoint train/test split.

    Stratified: exactly round(fraction * n) rows of every class go to train.
    Otherwise every row joins train independently with probability `fraction`.
    """
    counts = matrix.class_counts()
    missing = [CLASS_NAMES[c] for c in range(len(CLASS_NAMES)) if counts[c] == 0]
    if missing:
        raise StratificationError(f"classes missing from data: {', '.join(missing)}")
    rng = np.random.default_rng(np.random.SeedSequence(config.seed))
    if config.stratified:
        chosen = []
        for c in range(len(CLASS_NAMES)):
            members = np.flatnonzero(matrix.labels == c)
            n_train = int(round(config.train_fraction * members.size))
            chosen.append(rng.permutation(members)[:n_train])
        train_mask = np.zeros(len(matrix), dtype=bool)
        train_mask[np.concatenate(chosen)] = True
    else:
        train_mask = rng.random(len(matrix)) < config.train_fraction
    return matrix.take(np.flatnonzero(train_mask)), matrix.take(np.flatnonzero(~train_mask))


@dataclass
class MinMaxScaler:
    mins: np.ndarray = None
    maxs: np.ndarray = None
    clamp: tuple = (-0.1, 1.1)

    def fit(self, rows):
        self.mins = rows.min(axis=0)
        self.maxs = rows.max(axis=0)
        return self

    def transform(self, rows, clamp=False):
        span = self.maxs - self.mins
        constant = span == 0
        scaled = (rows - self.mins) / np.where(constant, 1.0, span)
        # constant training features sit in the middle of the range
        scaled[:, constant] = 0.5
        if clamp:
            scaled = np.clip(scaled, *self.clamp)
        return scaled


def normalize_minmax(train, test):
    scaler = MinMaxScaler().fit(train.rows)
    train_n = FeatureMatrix(scaler.transform(train.rows), train.labels, train.feature_set, train.source_index)
    test_n = FeatureMatrix(scaler.transform(test.rows, clamp=True), test.labels, test.feature_set, test.source_index)
    return train_n, test_n, scaler


@dataclass
class ConfusionMatrix:
    # rows = predicted class, columns = actual class
    counts: np.ndarray = field(default_factory=lambda: np.zeros((3, 3), dtype=int))
    class_names: tuple = tuple(CLASS_NAMES)

    @property
    def total(self):
        return int(self.counts.sum())

    @property
    def accuracy(self):
        if self.total == 0:
            return 0.0
        return float(np.trace(self.counts)) / self.total

    def actual_counts(self):
        return self.counts.sum(axis=0)

    def as_rows(self):
        return [[name] + [int(v) for v in row] for name, row in zip(self.class_names, self.counts)]


def evaluate(predictions, truths):
    predictions = np.asarray(predictions, dtype=int)
    truths = np.asarray(truths, dtype=int)
    if predictions.shape != truths.shape:
        raise ShapeError(f"{predictions.size} predictions for {truths.size} truths")
    counts = np.zeros((len(CLASS_NAMES), len(CLASS_NAMES)), dtype=int)
    np.add.at(counts, (predictions, truths), 1)
    cm = ConfusionMatrix(counts=counts)
    return cm, cm.accuracy
