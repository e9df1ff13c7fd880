"""Regression models, threat decisions and reliability metrics."""

from .base import (
    ENSEMBLE_KINDS,
    TREE_KINDS,
    FeatureScaler,
    LinearWeights,
    ModelKind,
    ModelSpec,
    PackedTrees,
    RegressorModel,
    TreeEnsemble,
    predict,
    predict_batch,
    train,
)
from .metrics import DEFAULT_THRESHOLD, EvalMetrics, decide, decide_batch, evaluate, mae, metrics_from_scores, mse, r2_score
from .store import ModelFormatError, load_model, save_model

__all__ = [
    "ENSEMBLE_KINDS",
    "TREE_KINDS",
    "DEFAULT_THRESHOLD",
    "EvalMetrics",
    "FeatureScaler",
    "LinearWeights",
    "ModelFormatError",
    "ModelKind",
    "ModelSpec",
    "PackedTrees",
    "RegressorModel",
    "TreeEnsemble",
    "decide",
    "decide_batch",
    "evaluate",
    "load_model",
    "mae",
    "metrics_from_scores",
    "mse",
    "predict",
    "predict_batch",
    "r2_score",
    "save_model",
    "train",
]
