"""Pure-numpy tree traversal kernels (fallback when the extension is absent).

Both backends implement the same two functions over packed node arrays and
must produce bit-identical outputs: trees are accumulated in index order with
one IEEE multiply-add per tree, so results do not depend on the backend.

Packed layout: all trees concatenated; ``offsets[t]`` is the root index of
tree t; ``feature[i] < 0`` marks node i as a leaf with prediction ``value[i]``;
rows go left when ``x[feature] <= threshold``. Child indices are absolute.
"""

import numpy as np

IS_COMPILED = False


def _leaf_values(feature, threshold, left, right, value, root, X):
    n = X.shape[0]
    node = np.full(n, root, dtype=np.int64)
    active = feature[node] >= 0
    while active.any():
        rows = np.nonzero(active)[0]
        cur = node[rows]
        go_left = X[rows, feature[cur]] <= threshold[cur]
        node[rows] = np.where(go_left, left[cur], right[cur])
        active[rows] = feature[node[rows]] >= 0
    return value[node]


def predict_weighted_sum(feature, threshold, left, right, value, offsets, weights, X, init):
    """init + sum_t weights[t] * tree_t(x) for every row of X."""
    out = np.full(X.shape[0], init, dtype=np.float64)
    for t in range(len(offsets) - 1):
        out += weights[t] * _leaf_values(feature, threshold, left, right, value, offsets[t], X)
    return out


def predict_matrix(feature, threshold, left, right, value, offsets, X):
    """(n_rows, n_trees) matrix of per-tree predictions."""
    n_trees = len(offsets) - 1
    out = np.empty((X.shape[0], n_trees), dtype=np.float64)
    for t in range(n_trees):
        out[:, t] = _leaf_values(feature, threshold, left, right, value, offsets[t], X)
    return out
