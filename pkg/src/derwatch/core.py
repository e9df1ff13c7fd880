"""Domain types shared by the whole pipeline.

A "message" is one DER control/status flow record: an M-dimensional feature
tuple plus a binary ground-truth label (0 = trusted, 1 = attack) and an
optional attack-kind tag. All types are immutable after construction and safe
to share read-only across threads.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from math import ceil, isfinite
from typing import Optional

import numpy as np

WUSTL_SCHEMA = "wustl-iiot-2018"

# Canonical feature order for the WUSTL schema; every downstream matrix
# (Shapley rows, reports, CSV exports) indexes features in this order.
WUSTL_FEATURES = ("sport", "total_pkts", "total_bytes", "src_pkts", "dst_pkts", "src_bytes")

SPORT, TOTAL_PKTS, TOTAL_BYTES, SRC_PKTS, DST_PKTS, SRC_BYTES = range(6)


class AttackKind(IntEnum):
    """Attack taxonomy; TRUSTED is the unique non-attack member."""

    TRUSTED = 0
    PORT_SCANNER = 1
    ADDRESS_SCAN = 2
    DEVICE_IDENTIFICATION = 3
    AGGRESSIVE_MODE = 4
    EXPLOIT = 5


@dataclass(frozen=True)
class FeatureVector:
    """One message's ordered numeric feature tuple."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


@dataclass(frozen=True)
class LabeledMessage:
    """A flow record with ground truth.

    ``kind`` is optional because the reference dataset folds all five attack
    types into one label; severity clustering must work without it.
    """

    id: int
    features: FeatureVector
    label: int
    kind: Optional[AttackKind] = None


@dataclass
class MessageDataset:
    """An ordered collection of messages, organized into fixed-size time slots."""

    messages: list
    feature_count: int
    slot_size: int = 100
    schema_name: str = WUSTL_SCHEMA
    _matrix: Optional[np.ndarray] = field(default=None, init=False, repr=False, compare=False)

    def __len__(self):
        return len(self.messages)

    @property
    def slot_count(self) -> int:
        return ceil(len(self.messages) / self.slot_size) if self.messages else 0

    def ids(self) -> np.ndarray:
        return np.asarray([m.id for m in self.messages], dtype=np.int64)

    def labels(self) -> np.ndarray:
        return np.asarray([m.label for m in self.messages], dtype=np.float64)

    def kinds(self) -> list:
        return [m.kind for m in self.messages]

    def feature_matrix(self) -> np.ndarray:
        """n x M float matrix in message order (cached)."""
        if self._matrix is None:
            if self.messages:
                self._matrix = np.asarray([m.features.values for m in self.messages], dtype=np.float64)
            else:
                self._matrix = np.empty((0, self.feature_count), dtype=np.float64)
        return self._matrix

    def subset(self, indices) -> "MessageDataset":
        """New dataset holding the selected messages (source ids retained)."""
        return MessageDataset(
            messages=[self.messages[i] for i in indices],
            feature_count=self.feature_count,
            slot_size=self.slot_size,
            schema_name=self.schema_name,
        )


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by validate_dataset."""

    message_id: Optional[int]
    field: str
    detail: str

    def __str__(self):
        where = "dataset" if self.message_id is None else f"id {self.message_id}"
        return f"violation at {where}, {self.field}: {self.detail}"


def feature_names(schema_name: str) -> list:
    """Canonical feature names for a registered schema.

    Pure function: registered schemas are ``wustl-iiot-2018`` and
    ``generic-M`` (e.g. ``generic-3`` -> [f0, f1, f2]).
    """
    if schema_name == WUSTL_SCHEMA:
        return list(WUSTL_FEATURES)
    if schema_name.startswith("generic-"):
        suffix = schema_name[len("generic-"):]
        if suffix.isdigit() and int(suffix) > 0:
            return [f"f{i}" for i in range(int(suffix))]
    raise ValueError(f"unknown schema: {schema_name!r}")


def validate_dataset(dataset: MessageDataset) -> list:
    """Return every invariant violation (empty list iff the dataset is valid).

    Violations are data, not errors: malformed rows are reported with their
    message id and offending field instead of raising.
    """
    violations = []
    if dataset.slot_size < 1:
        violations.append(Violation(None, "slot_size", f"must be >= 1, got {dataset.slot_size}"))

    wustl = dataset.schema_name == WUSTL_SCHEMA
    if wustl and dataset.feature_count != len(WUSTL_FEATURES):
        violations.append(
            Violation(None, "feature_count", f"wustl schema declares 6 features, got {dataset.feature_count}")
        )

    seen = set()
    for pos, msg in enumerate(dataset.messages):
        if msg.id in seen:
            violations.append(Violation(msg.id, "id", "duplicate message id"))
        seen.add(msg.id)

        if len(msg.features) != dataset.feature_count:
            violations.append(
                Violation(msg.id, "feature length", f"expected {dataset.feature_count}, got {len(msg.features)}")
            )
        for j, value in enumerate(msg.features.values):
            if not isfinite(value):
                violations.append(Violation(msg.id, "non-finite value", f"feature {j} is {value}"))
            elif wustl and j < len(WUSTL_FEATURES):
                name = WUSTL_FEATURES[j]
                if j == SPORT and not (0 <= value <= 65535):
                    violations.append(Violation(msg.id, name, f"port {value} outside [0, 65535]"))
                elif j != SPORT and value < 0:
                    violations.append(Violation(msg.id, name, f"negative count/byte value {value}"))

        if msg.label not in (0, 1):
            violations.append(Violation(msg.id, "label", f"must be 0 or 1, got {msg.label}"))
        if msg.kind is not None and (msg.label == 0) != (msg.kind == AttackKind.TRUSTED):
            violations.append(Violation(msg.id, "kind", f"label {msg.label} inconsistent with kind {msg.kind.name}"))

    n = len(dataset.messages)
    if seen and seen != set(range(n)):
        violations.append(Violation(None, "ids", f"ids not dense 0..{n - 1}"))
    return violations
