"""Ordinary least squares with intercept."""

import numpy as np

from .base import LinearWeights


def fit_linear(X: np.ndarray, y: np.ndarray) -> LinearWeights:
    """Exact least-squares minimizer of the MSE objective (via lstsq)."""
    design = np.hstack([np.ones((len(y), 1)), X])
    w, *_ = np.linalg.lstsq(design, y, rcond=None)
    return LinearWeights(intercept=float(w[0]), coef=np.asarray(w[1:], dtype=np.float64))
