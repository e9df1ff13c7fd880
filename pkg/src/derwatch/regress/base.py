"""Model specs, fitted-model containers and the predict/train dispatch."""

from dataclasses import dataclass, replace
from enum import Enum
from math import ceil
from typing import Optional, Union

import numpy as np

from .. import _kernels
from ..core import FeatureVector, MessageDataset


class ModelKind(str, Enum):
    LINEAR = "linear"
    CART = "cart"
    RANDOM_FOREST = "random-forest"
    EXTRA_TREES = "extra-trees"
    GRADIENT_BOOSTING = "gradient-boosting"
    ADABOOST = "adaboost"


ENSEMBLE_KINDS = {ModelKind.RANDOM_FOREST, ModelKind.EXTRA_TREES, ModelKind.GRADIENT_BOOSTING, ModelKind.ADABOOST}
TREE_KINDS = ENSEMBLE_KINDS | {ModelKind.CART}


@dataclass(frozen=True)
class ModelSpec:
    """Hyperparameters for one model family.

    None means "use the family default": RF/ET 100 trees, unlimited depth,
    min leaf 1 (RF subsamples ceil(M/3) features per split, ET uses all M
    with random thresholds); GradientBoosting 100 stages, depth 3, learning
    rate 0.1; AdaBoost 50 stumps with linear loss.
    """

    kind: ModelKind
    n_trees: Optional[int] = None
    max_depth: Optional[int] = None
    min_leaf: int = 1
    learning_rate: Optional[float] = None
    max_features: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if self.kind not in ENSEMBLE_KINDS and self.n_trees is not None:
            raise ValueError(f"n_trees not valid for {self.kind.value}")
        if self.kind is ModelKind.LINEAR and self.max_depth is not None:
            raise ValueError("max_depth not valid for linear")
        if self.kind is not ModelKind.GRADIENT_BOOSTING and self.learning_rate is not None:
            raise ValueError(f"learning_rate only valid for gradient-boosting, not {self.kind.value}")
        if self.kind not in (ModelKind.RANDOM_FOREST, ModelKind.EXTRA_TREES) and self.max_features is not None:
            raise ValueError(f"max_features only valid for forests, not {self.kind.value}")
        for name in ("n_trees", "max_depth", "max_features"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive, got {v}")
        if self.min_leaf < 1:
            raise ValueError(f"min_leaf must be positive, got {self.min_leaf}")
        if self.learning_rate is not None and not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")

    def effective(self, n_features: int) -> "ModelSpec":
        """Spec with family defaults filled in for an M-feature dataset."""
        out = self
        if self.kind in (ModelKind.RANDOM_FOREST, ModelKind.EXTRA_TREES):
            if out.n_trees is None:
                out = replace(out, n_trees=100)
            if out.max_features is None:
                subsample = ceil(n_features / 3) if self.kind is ModelKind.RANDOM_FOREST else n_features
                out = replace(out, max_features=subsample)
        elif self.kind is ModelKind.GRADIENT_BOOSTING:
            out = replace(
                out,
                n_trees=out.n_trees or 100,
                max_depth=out.max_depth or 3,
                learning_rate=out.learning_rate or 0.1,
            )
        elif self.kind is ModelKind.ADABOOST:
            out = replace(out, n_trees=out.n_trees or 50, max_depth=out.max_depth or 1)
        return out


@dataclass(frozen=True)
class LinearWeights:
    """w0 + sum_m coef[m] * z[m]; houses the intercept and weights exactly once."""

    intercept: float
    coef: np.ndarray


@dataclass(frozen=True)
class PackedTrees:
    """All trees of an ensemble concatenated into shared node arrays."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    offsets: np.ndarray  # root index per tree; len n_trees + 1

    @property
    def n_trees(self) -> int:
        return len(self.offsets) - 1

    @classmethod
    def pack(cls, trees) -> "PackedTrees":
        offsets = np.zeros(len(trees) + 1, dtype=np.int32)
        offsets[1:] = np.cumsum([t.n_nodes for t in trees])
        return cls(
            feature=np.concatenate([t.feature for t in trees]),
            threshold=np.concatenate([t.threshold for t in trees]),
            left=np.concatenate([np.where(t.left >= 0, t.left + off, -1) for t, off in zip(trees, offsets)]).astype(np.int32),
            right=np.concatenate([np.where(t.right >= 0, t.right + off, -1) for t, off in zip(trees, offsets)]).astype(np.int32),
            value=np.concatenate([t.value for t in trees]),
            offsets=offsets,
        )

    def weighted_sum(self, weights, X, init=0.0) -> np.ndarray:
        return _kernels.predict_weighted_sum(
            self.feature, self.threshold, self.left, self.right, self.value, self.offsets,
            np.ascontiguousarray(weights, dtype=np.float64),
            np.ascontiguousarray(X, dtype=np.float64), float(init),
        )

    def per_tree(self, X) -> np.ndarray:
        return _kernels.predict_matrix(
            self.feature, self.threshold, self.left, self.right, self.value, self.offsets,
            np.ascontiguousarray(X, dtype=np.float64),
        )


@dataclass(frozen=True)
class TreeEnsemble:
    """Fitted trees with per-tree weights.

    combine="sum": init + sum_t weights[t] * tree_t(x) (a plain forest is
    weights 1/T, init 0; boosting is weights lr, init = training mean).
    combine="median": weighted median across trees (AdaBoost.R2).
    """

    trees: PackedTrees
    weights: np.ndarray
    init: float = 0.0
    combine: str = "sum"


@dataclass(frozen=True)
class FeatureScaler:
    """Per-feature (v - mean) / std fitted on training data; constant features pass through."""

    mean: np.ndarray
    std: np.ndarray
    constant: np.ndarray  # bool mask of zero-stddev features

    def transform(self, X: np.ndarray) -> np.ndarray:
        safe = np.where(self.constant, 1.0, self.std)
        return np.where(self.constant, X, (X - self.mean) / safe)


@dataclass(frozen=True)
class RegressorModel:
    """A trained predictor; prediction is a pure function of (model, features)."""

    spec: ModelSpec
    feature_count: int
    training_mse: float
    payload: Union[LinearWeights, TreeEnsemble]
    scaler: Optional[FeatureScaler] = None
    overshoot_violations: int = 0  # training rows where the fit exceeds the actual label

    @property
    def kind(self) -> ModelKind:
        return self.spec.kind


def weighted_median(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Row-wise weighted median: first sorted value whose cumulative weight reaches half."""
    order = np.argsort(values, axis=1)
    cdf = np.cumsum(weights[order], axis=1)
    median_idx = (cdf >= 0.5 * cdf[:, -1:]).argmax(axis=1)
    rows = np.arange(values.shape[0])
    return values[rows, order[rows, median_idx]]


def payload_predict(payload, X: np.ndarray) -> np.ndarray:
    """Predict on an already-scaled feature matrix."""
    if isinstance(payload, LinearWeights):
        return X @ payload.coef + payload.intercept
    if payload.combine == "median":
        return weighted_median(payload.trees.per_tree(X), payload.weights)
    return payload.trees.weighted_sum(payload.weights, X, payload.init)


def predict_batch(model: RegressorModel, X: np.ndarray) -> np.ndarray:
    """Scores for every row of X (applies the stored scaler first, if any)."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.feature_count:
        raise ValueError(f"expected {model.feature_count} features, got shape {X.shape}")
    if model.scaler is not None:
        X = np.ascontiguousarray(model.scaler.transform(X))
    return payload_predict(model.payload, X)


def predict(model: RegressorModel, features) -> float:
    """Score a single message."""
    if isinstance(features, FeatureVector):
        features = features.as_array()
    row = np.asarray(features, dtype=np.float64).reshape(1, -1)
    if row.shape[1] != model.feature_count:
        raise ValueError(f"expected {model.feature_count} features, got {row.shape[1]}")
    return float(predict_batch(model, row)[0])


def train(spec: ModelSpec, dataset: MessageDataset, scaler: Optional[FeatureScaler] = None) -> RegressorModel:
    """Fit the family named by spec, minimizing mean squared error.

    The dataset is used as given (pass the standardized dataset plus its
    scaler to bake scaling into the model). Deterministic for a fixed seed.
    """
    from . import ensemble, linear  # local import to avoid a cycle at module load

    if len(dataset) == 0:
        raise ValueError("cannot train on an empty dataset")
    for msg in dataset.messages:
        if len(msg.features) != dataset.feature_count:
            raise ValueError(f"feature_count mismatch at id {msg.id}: {len(msg.features)} != {dataset.feature_count}")
    y = dataset.labels()
    if not np.isin(y, (0.0, 1.0)).all():
        raise ValueError("labels must be binary (0/1)")
    X = dataset.feature_matrix()

    eff = spec.effective(dataset.feature_count)
    if eff.max_features is not None and eff.max_features > dataset.feature_count:
        raise ValueError(f"max_features {eff.max_features} exceeds feature count {dataset.feature_count}")

    if eff.kind is ModelKind.LINEAR:
        payload = linear.fit_linear(X, y)
    elif eff.kind is ModelKind.CART:
        payload = ensemble.fit_cart(X, y, eff)
    elif eff.kind is ModelKind.RANDOM_FOREST:
        payload = ensemble.fit_random_forest(X, y, eff)
    elif eff.kind is ModelKind.EXTRA_TREES:
        payload = ensemble.fit_extra_trees(X, y, eff)
    elif eff.kind is ModelKind.GRADIENT_BOOSTING:
        payload = ensemble.fit_gradient_boosting(X, y, eff)
    else:
        payload = ensemble.fit_adaboost(X, y, eff)

    fit = payload_predict(payload, X)
    return RegressorModel(
        spec=spec,
        feature_count=dataset.feature_count,
        training_mse=float(np.mean((y - fit) ** 2)),
        payload=payload,
        scaler=scaler,
        overshoot_violations=int(np.sum(fit > y)),
    )
