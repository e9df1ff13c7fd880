"""Thresholded threat decisions and reliability metrics."""

from dataclasses import dataclass
from math import isfinite
from typing import Optional

import numpy as np

from ..core import MessageDataset
from .base import RegressorModel, predict_batch

DEFAULT_THRESHOLD = 0.5


def decide(score: float, threshold: float = DEFAULT_THRESHOLD) -> int:
    """1 (attack) iff score >= threshold; the tie counts as an attack (fail-safe)."""
    if not isfinite(threshold):
        raise ValueError(f"threshold must be finite, got {threshold}")
    return int(score >= threshold)


def decide_batch(scores: np.ndarray, threshold: float = DEFAULT_THRESHOLD) -> np.ndarray:
    if not isfinite(threshold):
        raise ValueError(f"threshold must be finite, got {threshold}")
    return (np.asarray(scores) >= threshold).astype(np.int64)


def mse(y_true, y_pred) -> float:
    return float(np.mean((np.asarray(y_true) - np.asarray(y_pred)) ** 2))


def mae(y_true, y_pred) -> float:
    return float(np.mean(np.abs(np.asarray(y_true) - np.asarray(y_pred))))


def r2_score(y_true, y_pred) -> float:
    """1 - SS_res/SS_tot; 0 by convention when SS_tot is zero."""
    y_true = np.asarray(y_true, dtype=np.float64)
    y_pred = np.asarray(y_pred, dtype=np.float64)
    ss_tot = float(np.sum((y_true - y_true.mean()) ** 2))
    if ss_tot == 0.0:
        return 0.0
    ss_res = float(np.sum((y_true - y_pred) ** 2))
    return 1.0 - ss_res / ss_tot


@dataclass(frozen=True)
class EvalMetrics:
    """Confusion counts with per-class rates plus regression scores.

    Rates are normalized per true class (tn_rate + fp_rate = 1 over true
    negatives, fn_rate + tp_rate = 1 over true positives) and are None when
    the class is absent.
    """

    tn: int
    fp: int
    fn: int
    tp: int
    r2: float
    mse: float
    mae: float

    @property
    def tn_rate(self) -> Optional[float]:
        return self.tn / (self.tn + self.fp) if self.tn + self.fp > 0 else None

    @property
    def fp_rate(self) -> Optional[float]:
        return self.fp / (self.tn + self.fp) if self.tn + self.fp > 0 else None

    @property
    def fn_rate(self) -> Optional[float]:
        return self.fn / (self.fn + self.tp) if self.fn + self.tp > 0 else None

    @property
    def tp_rate(self) -> Optional[float]:
        return self.tp / (self.fn + self.tp) if self.fn + self.tp > 0 else None

    def as_dict(self) -> dict:
        return {
            "tn": self.tn, "fp": self.fp, "fn": self.fn, "tp": self.tp,
            "tn_rate": self.tn_rate, "fp_rate": self.fp_rate,
            "fn_rate": self.fn_rate, "tp_rate": self.tp_rate,
            "r2": self.r2, "mse": self.mse, "mae": self.mae,
        }


def metrics_from_scores(labels: np.ndarray, scores: np.ndarray, threshold: float = DEFAULT_THRESHOLD) -> EvalMetrics:
    labels = np.asarray(labels, dtype=np.float64)
    decisions = decide_batch(scores, threshold)
    truth = labels >= 0.5
    return EvalMetrics(
        tn=int(np.sum(~truth & (decisions == 0))),
        fp=int(np.sum(~truth & (decisions == 1))),
        fn=int(np.sum(truth & (decisions == 0))),
        tp=int(np.sum(truth & (decisions == 1))),
        r2=r2_score(labels, scores),
        mse=mse(labels, scores),
        mae=mae(labels, scores),
    )


def evaluate(model: RegressorModel, test: MessageDataset, threshold: float = DEFAULT_THRESHOLD) -> EvalMetrics:
    """Score every test message, threshold into decisions, and report
    confusion counts plus R2/MSE/MAE on the raw scores (one decision per
    message, exactly |test| in total)."""
    if len(test) == 0:
        raise ValueError("cannot evaluate on an empty dataset")
    scores = predict_batch(model, test.feature_matrix())
    return metrics_from_scores(test.labels(), scores, threshold)
