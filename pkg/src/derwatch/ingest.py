"""Dataset loading, synthetic generation and the train/test split.

CSV convention (WUSTL column mapping): header
``Sport,TotPkts,TotBytes,SrcPkts,DstPkts,SrcBytes,Target`` plus an optional
``AttackKind`` column; extra columns are ignored. Exports of synthetic data
use the identical header so real and generated files flow through the same
commands.
"""

import csv
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (
    WUSTL_SCHEMA,
    AttackKind,
    FeatureVector,
    LabeledMessage,
    MessageDataset,
    feature_names,
)
from .regress.base import FeatureScaler

WUSTL_COLUMNS = ("Sport", "TotPkts", "TotBytes", "SrcPkts", "DstPkts", "SrcBytes")
WUSTL_LABEL_COLUMN = "Target"
WUSTL_KIND_COLUMN = "AttackKind"

DEFAULT_SLOT_SIZE = 100


@dataclass(frozen=True)
class SchemaMap:
    """Maps CSV columns onto feature slots.

    feature_columns[i] names the column feeding feature slot i; the label
    column must be distinct from all of them. kind_column, when named, is
    read if present in the header and ignored otherwise.
    """

    feature_columns: tuple
    label_column: str
    kind_column: Optional[str] = None
    delimiter: str = ","
    has_header: bool = True
    schema_name: str = WUSTL_SCHEMA

    def __post_init__(self):
        object.__setattr__(self, "feature_columns", tuple(self.feature_columns))
        if len(set(self.feature_columns)) != len(self.feature_columns):
            raise ValueError("feature columns must be distinct")
        if self.label_column in self.feature_columns:
            raise ValueError(f"label column {self.label_column!r} collides with a feature column")

    @property
    def feature_count(self) -> int:
        return len(self.feature_columns)


def wustl_schema() -> SchemaMap:
    return SchemaMap(
        feature_columns=WUSTL_COLUMNS,
        label_column=WUSTL_LABEL_COLUMN,
        kind_column=WUSTL_KIND_COLUMN,
    )


@dataclass(frozen=True)
class SplitResult:
    """Disjoint train/test partition; message ids are retained from the input."""

    train: MessageDataset
    test: MessageDataset
    seed: int
    train_fraction: float


def load_csv(path, schema: Optional[SchemaMap] = None, slot_size: int = DEFAULT_SLOT_SIZE) -> MessageDataset:
    """Load flow records; row order becomes message id order.

    Errors name the missing column or the offending (1-based data row,
    column) cell; an empty file is an error.
    """
    schema = schema or wustl_schema()
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter=schema.delimiter)
        rows = [row for row in reader if row]
    if not rows:
        raise ValueError(f"empty CSV file: {path}")

    if schema.has_header:
        header, data = rows[0], rows[1:]
    else:
        header = list(schema.feature_columns) + [schema.label_column]
        data = rows
    if not data:
        raise ValueError(f"CSV file has no data rows: {path}")

    index = {name: i for i, name in enumerate(header)}
    for name in (*schema.feature_columns, schema.label_column):
        if name not in index:
            raise ValueError(f"missing column {name}")
    kind_idx = index.get(schema.kind_column) if schema.kind_column else None

    def cell(row, row_no, col_name):
        try:
            return float(row[index[col_name]])
        except (ValueError, IndexError):
            got = row[index[col_name]] if index[col_name] < len(row) else "<absent>"
            raise ValueError(f"unparseable value {got!r} at row {row_no}, column {col_name}") from None

    messages = []
    for i, row in enumerate(data):
        row_no = i + 1
        values = tuple(cell(row, row_no, name) for name in schema.feature_columns)
        label = cell(row, row_no, schema.label_column)
        if label not in (0.0, 1.0):
            raise ValueError(f"label must be 0 or 1 at row {row_no}, column {schema.label_column}, got {label}")
        kind = None
        if kind_idx is not None and kind_idx < len(row) and row[kind_idx] != "":
            try:
                kind = AttackKind[row[kind_idx]]
            except KeyError:
                raise ValueError(f"unknown attack kind {row[kind_idx]!r} at row {row_no}") from None
        messages.append(LabeledMessage(id=i, features=FeatureVector(values), label=int(label), kind=kind))

    return MessageDataset(
        messages=messages,
        feature_count=schema.feature_count,
        slot_size=slot_size,
        schema_name=schema.schema_name,
    )


def export_csv(dataset: MessageDataset, path, schema: Optional[SchemaMap] = None) -> None:
    """Write the dataset with the standard header; floats use shortest
    round-trip repr so load_csv(export_csv(d)) == d."""
    schema = schema or wustl_schema()
    write_kinds = schema.kind_column is not None and any(m.kind is not None for m in dataset.messages)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter=schema.delimiter, lineterminator="\n")
        header = list(schema.feature_columns) + [schema.label_column]
        if write_kinds:
            header.append(schema.kind_column)
        writer.writerow(header)
        for m in dataset.messages:
            row = [repr(v) for v in m.features.values] + [str(m.label)]
            if write_kinds:
                row.append(m.kind.name if m.kind is not None else "")
            writer.writerow(row)


def split_dataset(dataset: MessageDataset, train_fraction: float, seed: int) -> SplitResult:
    """Seeded uniform shuffle then prefix split; |train| = round(fraction * n).

    Non-stratified by design. The two sides keep their source message ids, so
    they are disjoint and their union is the input.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    n = len(dataset)
    if n < 2:
        raise ValueError(f"need at least 2 messages to split, got {n}")
    order = np.random.default_rng(seed).permutation(n)
    n_train = round(train_fraction * n)
    return SplitResult(
        train=dataset.subset(order[:n_train]),
        test=dataset.subset(order[n_train:]),
        seed=seed,
        train_fraction=train_fraction,
    )


@dataclass(frozen=True)
class PlantedRule:
    """Synthetic traffic rule.

    Trusted sessions draw narrow request-side counts and bytes with service
    ports below ephemeral ranges; attacks move the source port into a
    kind-specific high range and inflate bytes-per-packet on the source side,
    so sport and src_bytes carry the decision boundary while packet counts
    overlap across classes. total_bytes stays uninformative because trusted
    response traffic spans a wide byte range.
    """

    attack_prob: float = 0.2
    kind_probs: tuple = (0.2, 0.2, 0.2, 0.2, 0.2)  # over the five attack kinds
    trusted_sport: tuple = (1024, 5000)
    attack_sport: dict = field(default_factory=lambda: {
        AttackKind.EXPLOIT: (20000, 30000),
        AttackKind.AGGRESSIVE_MODE: (30000, 40000),
        AttackKind.DEVICE_IDENTIFICATION: (40000, 50000),
        AttackKind.ADDRESS_SCAN: (50000, 60000),
        AttackKind.PORT_SCANNER: (60000, 65536),
    })
    attack_src_bpp: dict = field(default_factory=lambda: {
        AttackKind.PORT_SCANNER: 300.0,
        AttackKind.ADDRESS_SCAN: 500.0,
        AttackKind.DEVICE_IDENTIFICATION: 800.0,
        AttackKind.AGGRESSIVE_MODE: 1200.0,
        AttackKind.EXPLOIT: 2000.0,
    })

    def __post_init__(self):
        if not 0.0 <= self.attack_prob <= 1.0:
            raise ValueError(f"attack_prob must be in [0, 1], got {self.attack_prob}")
        if len(self.kind_probs) != 5 or abs(sum(self.kind_probs) - 1.0) > 1e-9:
            raise ValueError("kind_probs must be 5 probabilities summing to 1")


def generate_synthetic(n: int, seed: int, rule: Optional[PlantedRule] = None,
                       slot_size: int = DEFAULT_SLOT_SIZE) -> MessageDataset:
    """Deterministic synthetic WUSTL-shaped dataset with planted attacks."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    rule = rule or PlantedRule()
    rng = np.random.default_rng(seed)

    is_attack = rng.random(n) < rule.attack_prob
    kind_draw = rng.choice(np.arange(1, 6), size=n, p=np.asarray(rule.kind_probs))
    kinds = np.where(is_attack, kind_draw, 0)

    total_pkts = np.maximum(np.round(rng.normal(40.0, 10.0, n)), 2.0)
    src_frac = rng.uniform(0.35, 0.65, n)
    src_pkts = np.clip(np.round(total_pkts * src_frac), 1.0, total_pkts - 1.0)
    dst_pkts = total_pkts - src_pkts

    # Trusted: small requests, wildly varying responses (keeps total_bytes wide).
    src_bpp = np.maximum(rng.normal(110.0, 25.0, n), 40.0)
    dst_bpp = np.exp(rng.normal(np.log(400.0), 1.2, n))
    sport = rng.integers(rule.trusted_sport[0], rule.trusted_sport[1], size=n).astype(np.float64)

    for kind, (lo, hi) in rule.attack_sport.items():
        rows = kinds == kind
        count = int(rows.sum())
        if count == 0:
            continue
        sport[rows] = rng.integers(lo, hi, size=count).astype(np.float64)
        level = rule.attack_src_bpp[kind]
        src_bpp[rows] = np.maximum(rng.normal(level, 0.12 * level, count), 0.5 * level)
        dst_bpp[rows] = np.maximum(rng.normal(120.0, 30.0, count), 20.0)

    src_bytes = np.round(src_pkts * src_bpp)
    total_bytes = np.round(src_bytes + dst_pkts * dst_bpp)

    messages = []
    for i in range(n):
        features = FeatureVector((sport[i], total_pkts[i], total_bytes[i], src_pkts[i], dst_pkts[i], src_bytes[i]))
        kind = AttackKind(int(kinds[i]))
        messages.append(LabeledMessage(id=i, features=features, label=int(kind != AttackKind.TRUSTED), kind=kind))
    return MessageDataset(messages=messages, feature_count=6, slot_size=slot_size, schema_name=WUSTL_SCHEMA)


def standardize(train: MessageDataset, test: MessageDataset):
    """Scale both sides to (v - mean)/stddev using train-only population
    statistics; zero-stddev features pass through and are flagged.

    Returns (scaled train, scaled test, FeatureScaler).
    """
    if len(train) == 0:
        raise ValueError("cannot standardize with an empty training set")
    X = train.feature_matrix()
    mean = X.mean(axis=0)
    std = X.std(axis=0)  # population stddev
    scaler = FeatureScaler(mean=mean, std=std, constant=std == 0.0)

    def rebuild(ds: MessageDataset) -> MessageDataset:
        scaled = scaler.transform(ds.feature_matrix())
        messages = [
            LabeledMessage(id=m.id, features=FeatureVector(tuple(scaled[i])), label=m.label, kind=m.kind)
            for i, m in enumerate(ds.messages)
        ]
        return MessageDataset(messages=messages, feature_count=ds.feature_count,
                              slot_size=ds.slot_size, schema_name=ds.schema_name)

    return rebuild(train), rebuild(test), scaler


def schema_feature_names(dataset: MessageDataset) -> list:
    """Canonical feature names for a dataset (falls back to generic-M)."""
    try:
        return feature_names(dataset.schema_name)
    except ValueError:
        return feature_names(f"generic-{dataset.feature_count}")
