"""Self-describing JSON model files.

Layout: {"format_version": 1, "kind", "spec", "feature_count",
"training_mse", "overshoot_violations", "scaler", "payload"}. Floats are
serialized with shortest-round-trip repr, so save/load preserves predictions
bitwise. Unknown versions and malformed files are rejected by name.
"""

import json

import numpy as np

from .base import FeatureScaler, LinearWeights, ModelSpec, PackedTrees, RegressorModel, TreeEnsemble

FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    """Raised for unreadable or unsupported model files."""


def _payload_dict(payload) -> dict:
    if isinstance(payload, LinearWeights):
        return {"type": "linear", "intercept": payload.intercept, "coef": payload.coef.tolist()}
    t = payload.trees
    return {
        "type": "trees",
        "combine": payload.combine,
        "init": payload.init,
        "weights": payload.weights.tolist(),
        "offsets": t.offsets.tolist(),
        "feature": t.feature.tolist(),
        "threshold": t.threshold.tolist(),
        "left": t.left.tolist(),
        "right": t.right.tolist(),
        "value": t.value.tolist(),
    }


def _payload_from_dict(d: dict):
    if d["type"] == "linear":
        return LinearWeights(intercept=float(d["intercept"]), coef=np.asarray(d["coef"], dtype=np.float64))
    trees = PackedTrees(
        feature=np.asarray(d["feature"], dtype=np.int32),
        threshold=np.asarray(d["threshold"], dtype=np.float64),
        left=np.asarray(d["left"], dtype=np.int32),
        right=np.asarray(d["right"], dtype=np.int32),
        value=np.asarray(d["value"], dtype=np.float64),
        offsets=np.asarray(d["offsets"], dtype=np.int32),
    )
    return TreeEnsemble(
        trees=trees,
        weights=np.asarray(d["weights"], dtype=np.float64),
        init=float(d["init"]),
        combine=d["combine"],
    )


def model_to_dict(model: RegressorModel) -> dict:
    spec = model.spec
    return {
        "format_version": FORMAT_VERSION,
        "kind": spec.kind.value,
        "spec": {
            "n_trees": spec.n_trees,
            "max_depth": spec.max_depth,
            "min_leaf": spec.min_leaf,
            "learning_rate": spec.learning_rate,
            "max_features": spec.max_features,
            "seed": spec.seed,
        },
        "feature_count": model.feature_count,
        "training_mse": model.training_mse,
        "overshoot_violations": model.overshoot_violations,
        "scaler": None if model.scaler is None else {
            "mean": model.scaler.mean.tolist(),
            "std": model.scaler.std.tolist(),
            "constant": model.scaler.constant.tolist(),
        },
        "payload": _payload_dict(model.payload),
    }


def model_from_dict(doc: dict) -> RegressorModel:
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version: {version!r}")
    try:
        spec = ModelSpec(kind=doc["kind"], **doc["spec"])
        scaler = doc.get("scaler")
        return RegressorModel(
            spec=spec,
            feature_count=int(doc["feature_count"]),
            training_mse=float(doc["training_mse"]),
            payload=_payload_from_dict(doc["payload"]),
            scaler=None if scaler is None else FeatureScaler(
                mean=np.asarray(scaler["mean"], dtype=np.float64),
                std=np.asarray(scaler["std"], dtype=np.float64),
                constant=np.asarray(scaler["constant"], dtype=bool),
            ),
            overshoot_violations=int(doc.get("overshoot_violations", 0)),
        )
    except (KeyError, TypeError) as exc:
        raise ModelFormatError(f"malformed model file: missing or invalid field ({exc})") from exc


def save_model(model: RegressorModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, sort_keys=True)
        fh.write("\n")


def load_model(path) -> RegressorModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"corrupt model file: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("corrupt model file: top-level JSON object expected")
    return model_from_dict(doc)
