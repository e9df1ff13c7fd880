"""Tree-ensemble trainers: CART, random forest, extra trees, gradient
boosting and AdaBoost.R2.

Every stochastic trainer derives one generator per tree from
(spec.seed, tree index), so results cannot depend on training parallelism.
"""

import numpy as np

from .base import ModelSpec, PackedTrees, TreeEnsemble
from .cart import grow_tree


def _tree_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng((seed, index))


def fit_cart(X, y, spec: ModelSpec) -> TreeEnsemble:
    tree = grow_tree(X, y, max_depth=spec.max_depth, min_leaf=spec.min_leaf)
    return TreeEnsemble(trees=PackedTrees.pack([tree]), weights=np.ones(1))


def fit_random_forest(X, y, spec: ModelSpec) -> TreeEnsemble:
    """Bootstrap-aggregated CART trees; prediction is the plain tree mean."""
    n = len(y)
    trees = []
    for t in range(spec.n_trees):
        rng = _tree_rng(spec.seed, t)
        idx = rng.integers(0, n, size=n)
        trees.append(
            grow_tree(
                X[idx], y[idx],
                max_depth=spec.max_depth, min_leaf=spec.min_leaf,
                max_features=spec.max_features, rng=rng,
            )
        )
    return TreeEnsemble(trees=PackedTrees.pack(trees), weights=np.full(spec.n_trees, 1.0 / spec.n_trees))


def fit_extra_trees(X, y, spec: ModelSpec) -> TreeEnsemble:
    """Extremely randomized trees: full sample, one random cut per feature per node."""
    trees = []
    for t in range(spec.n_trees):
        rng = _tree_rng(spec.seed, t)
        trees.append(
            grow_tree(
                X, y,
                max_depth=spec.max_depth, min_leaf=spec.min_leaf,
                max_features=spec.max_features, splitter="random", rng=rng,
            )
        )
    return TreeEnsemble(trees=PackedTrees.pack(trees), weights=np.full(spec.n_trees, 1.0 / spec.n_trees))


def fit_gradient_boosting(X, y, spec: ModelSpec) -> TreeEnsemble:
    """Least-squares boosting: start from the mean, fit each stage to residuals."""
    init = float(y.mean())
    residual = y - init
    trees = []
    for _ in range(spec.n_trees):
        tree = grow_tree(X, residual, max_depth=spec.max_depth, min_leaf=spec.min_leaf)
        residual = residual - spec.learning_rate * tree.predict(X)
        trees.append(tree)
    weights = np.full(spec.n_trees, spec.learning_rate, dtype=np.float64)
    return TreeEnsemble(trees=PackedTrees.pack(trees), weights=weights, init=init)


def fit_adaboost(X, y, spec: ModelSpec) -> TreeEnsemble:
    """AdaBoost.R2 with linear loss.

    Each round fits a stump on a weighted bootstrap resample, measures
    normalized absolute error on the full sample, and reweights. Stops early
    on a perfect round or when average loss reaches 0.5. Prediction is the
    weighted median of the kept learners.
    """
    n = len(y)
    sample_weight = np.full(n, 1.0 / n)
    trees, log_weights = [], []
    for t in range(spec.n_trees):
        rng = _tree_rng(spec.seed, t)
        idx = rng.choice(n, size=n, replace=True, p=sample_weight)
        tree = grow_tree(X[idx], y[idx], max_depth=spec.max_depth, min_leaf=spec.min_leaf)
        error = np.abs(tree.predict(X) - y)
        error_max = error.max()
        if error_max <= 0:
            trees.append(tree)
            log_weights.append(1.0)
            break
        error /= error_max
        avg_loss = float(np.sum(sample_weight * error))
        if avg_loss >= 0.5:
            if not trees:  # keep a lone weak learner rather than an empty model
                trees.append(tree)
                log_weights.append(1.0)
            break
        beta = avg_loss / (1.0 - avg_loss)
        trees.append(tree)
        log_weights.append(float(np.log(1.0 / beta)))
        sample_weight = sample_weight * beta ** (1.0 - error)
        sample_weight /= sample_weight.sum()
    return TreeEnsemble(
        trees=PackedTrees.pack(trees),
        weights=np.asarray(log_weights, dtype=np.float64),
        combine="median",
    )
