"""CART regression trees over flat node arrays.

Trees are grown by exhaustive variance-reduction split search (or uniform
random thresholds for the extra-trees splitter) and stored as parallel node
arrays so the traversal kernels can run over many trees without Python-level
dispatch. Rows with x[feature] <= threshold go left; thresholds are midpoints
between consecutive distinct sorted values.
"""

from dataclasses import dataclass

import numpy as np

from .. import _kernels


@dataclass
class TreeArrays:
    """One fitted tree: feature[i] < 0 marks node i as a leaf."""

    feature: np.ndarray    # int32, split feature or -1
    threshold: np.ndarray  # float64
    left: np.ndarray       # int32 child index
    right: np.ndarray      # int32 child index
    value: np.ndarray      # float64 node mean

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.ascontiguousarray(X, dtype=np.float64)
        offsets = np.array([0, self.n_nodes], dtype=np.int32)
        one = np.ones(1, dtype=np.float64)
        return _kernels.predict_weighted_sum(
            self.feature, self.threshold, self.left, self.right, self.value, offsets, one, X, 0.0
        )


def best_split(X, y, feature_ids, min_leaf=1):
    """Exhaustive best split by variance reduction.

    Scans features in the given order and every midpoint between consecutive
    distinct sorted values; a candidate is valid when both sides hold at least
    min_leaf rows. Returns (feature, threshold, child_sse) of the candidate
    with the smallest summed child SSE (ties: first feature in scan order,
    then lowest threshold), or None when no feature admits a valid split.
    """
    n = len(y)
    best = None
    for f in feature_ids:
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        ys = y[order]
        csum = np.cumsum(ys)
        csq = np.cumsum(ys * ys)
        nl = np.arange(1, n, dtype=np.float64)
        nr = n - nl
        sl, sr = csum[:-1], csum[-1] - csum[:-1]
        ql, qr = csq[:-1], csq[-1] - csq[:-1]
        score = (ql - sl * sl / nl) + (qr - sr * sr / nr)
        valid = (xs[1:] > xs[:-1]) & (nl >= min_leaf) & (nr >= min_leaf)
        if not valid.any():
            continue
        score = np.where(valid, score, np.inf)
        i = int(np.argmin(score))
        if best is None or score[i] < best[2]:
            best = (f, (xs[i] + xs[i + 1]) / 2.0, float(score[i]))
    return best


def random_split(X, y, feature_ids, rng, min_leaf=1):
    """Extra-trees splitter: one uniform random cut per feature, best SSE wins."""
    best = None
    for f in feature_ids:
        col = X[:, f]
        lo, hi = col.min(), col.max()
        if lo == hi:
            continue
        thresh = rng.uniform(lo, hi)
        mask = col <= thresh
        nl = int(mask.sum())
        nr = len(y) - nl
        if nl < min_leaf or nr < min_leaf:
            continue
        yl, yr = y[mask], y[~mask]
        score = float(((yl - yl.mean()) ** 2).sum() + ((yr - yr.mean()) ** 2).sum())
        if best is None or score < best[2]:
            best = (f, float(thresh), score)
    return best


def grow_tree(X, y, *, max_depth=None, min_leaf=1, max_features=None, splitter="best", rng=None):
    """Fit one regression tree; nodes are appended in preorder."""
    n, n_features = X.shape
    feature, threshold, left, right, value = [], [], [], [], []

    def new_node():
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(0.0)
        return len(feature) - 1

    stack = [(new_node(), np.arange(n), 0)]
    while stack:
        node, rows, depth = stack.pop()
        ys = y[rows]
        value[node] = float(ys.mean())
        if len(rows) < max(2, 2 * min_leaf) or (max_depth is not None and depth >= max_depth):
            continue
        if np.all(ys == ys[0]):
            continue

        if max_features is not None and max_features < n_features:
            feats = np.sort(rng.choice(n_features, size=max_features, replace=False))
        else:
            feats = range(n_features)

        Xn = X[rows]
        if splitter == "random":
            split = random_split(Xn, ys, feats, rng, min_leaf)
        else:
            split = best_split(Xn, ys, feats, min_leaf)
        if split is None:
            continue

        f, thresh, _ = split
        mask = Xn[:, f] <= thresh
        feature[node] = f
        threshold[node] = thresh
        left[node] = lchild = new_node()
        right[node] = rchild = new_node()
        stack.append((rchild, rows[~mask], depth + 1))
        stack.append((lchild, rows[mask], depth + 1))

    return TreeArrays(
        feature=np.asarray(feature, dtype=np.int32),
        threshold=np.asarray(threshold, dtype=np.float64),
        left=np.asarray(left, dtype=np.int32),
        right=np.asarray(right, dtype=np.int32),
        value=np.asarray(value, dtype=np.float64),
    )
