"""Dataset model, delimited-text ingestion, and min-max normalization.

The tabular format is plain UTF-8 comma-separated text with a header row:
the first column identifies the entity, the second carries its categorical
type label, and every remaining column is a numeric indicator. Indicator
headers may carry a unit in parentheses, e.g. ``asset_size (million)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, TextIO

import numpy as np

__all__ = [
    "IngestError",
    "IndicatorSchema",
    "Entity",
    "Dataset",
    "NormalizedMatrix",
    "ingest",
    "normalize",
    "export_dataset",
]


class IngestError(ValueError):
    """A tabular source that cannot be turned into a valid dataset."""


@dataclass(frozen=True)
class IndicatorSchema:
    """Ordered numeric indicator columns plus the name of the type column."""

    indicators: tuple[tuple[str, str], ...]  # (name, unit) per indicator
    type_field: str = "type"

    def __post_init__(self) -> None:
        names = [name for name, _ in self.indicators]
        if len(names) < 2:
            raise ValueError("schema requires at least 2 indicators")
        if any(not name for name in names):
            raise ValueError("indicator names must be non-empty")
        if len(set(names)) != len(names):
            raise ValueError("indicator names must be unique")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.indicators)

    @property
    def width(self) -> int:
        return len(self.indicators)


@dataclass(frozen=True)
class Entity:
    """One rateable row: identifier, display name, type label, raw values."""

    id: str
    name: str
    type_label: str
    raw: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("entity id must be non-empty")
        if not all(math.isfinite(v) for v in self.raw):
            raise ValueError(f"entity '{self.id}' has non-finite raw values")


@dataclass(frozen=True)
class Dataset:
    """Immutable entity collection with per-indicator min/max statistics."""

    schema: IndicatorSchema
    entities: tuple[Entity, ...]
    norm_stats: tuple[tuple[float, float], ...]  # (min, max) per indicator

    def __post_init__(self) -> None:
        if len(self.entities) < 2:
            raise ValueError("dataset requires at least 2 entities")
        ids = [e.id for e in self.entities]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise ValueError(f"duplicate entity id '{dup}'")
        m = self.schema.width
        for e in self.entities:
            if len(e.raw) != m:
                raise ValueError(
                    f"entity '{e.id}' has {len(e.raw)} values, schema has {m} indicators"
                )
        if len(self.norm_stats) != m:
            raise ValueError("norm_stats length must match indicator count")
        for j, (lo, hi) in enumerate(self.norm_stats):
            if lo > hi:
                raise ValueError(f"norm_stats for indicator {j}: min > max")

    @classmethod
    def build(cls, schema: IndicatorSchema, entities: Iterable[Entity]) -> "Dataset":
        """Construct a dataset, computing min/max stats from the entities."""
        ents = tuple(entities)
        if len(ents) < 2:
            raise ValueError("dataset requires at least 2 entities")
        raw = np.asarray([e.raw for e in ents], dtype=float)
        stats = tuple(
            (float(raw[:, j].min()), float(raw[:, j].max()))
            for j in range(raw.shape[1])
        )
        return cls(schema=schema, entities=ents, norm_stats=stats)

    @property
    def size(self) -> int:
        return len(self.entities)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.entities)

    def entity(self, entity_id: str) -> Entity:
        for e in self.entities:
            if e.id == entity_id:
                return e
        raise KeyError(entity_id)

    def type_labels(self) -> tuple[str, ...]:
        """Observed type labels in order of first appearance."""
        seen: dict[str, None] = {}
        for e in self.entities:
            seen.setdefault(e.type_label, None)
        return tuple(seen)

    def type_of(self, entity_id: str) -> str:
        return self.entity(entity_id).type_label


@dataclass(frozen=True, eq=False)
class NormalizedMatrix:
    """Read-only n x m matrix of values in [0, 1], rows aligned with ids."""

    values: np.ndarray
    entity_order: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.values.ndim != 2 or self.values.shape[0] != len(self.entity_order):
            raise ValueError("matrix shape does not match entity order")
        self.values.setflags(write=False)
        object.__setattr__(
            self, "_index", {eid: i for i, eid in enumerate(self.entity_order)}
        )

    def row(self, entity_id: str) -> np.ndarray:
        return self.values[self._index[entity_id]]  # type: ignore[attr-defined]

    def index_of(self, entity_id: str) -> int:
        return self._index[entity_id]  # type: ignore[attr-defined]


def _split_header(cell: str) -> tuple[str, str]:
    # "asset_size (million)" -> ("asset_size", "million"); no parens -> unit ""
    cell = cell.strip()
    if cell.endswith(")") and "(" in cell:
        name, _, unit = cell.rpartition("(")
        return name.strip(), unit[:-1].strip()
    return cell, ""


def ingest(
    source: str | TextIO,
    schema_hints: Mapping[str, str] | None = None,
) -> Dataset:
    """Parse delimited text into a Dataset.

    ``schema_hints`` may name the id and type columns ({"id": ..., "type": ...});
    without hints the first column is the id/name and the second is the type
    label. Every other column must parse as a finite number. Malformed rows,
    non-numeric cells, duplicate ids, and an empty data section are rejected
    with positional diagnostics.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError("no entities: source is empty") from None
    header = [h.strip() for h in header]
    if len(header) < 4:
        raise IngestError(
            "header must have an id column, a type column, and at least 2 indicators"
        )

    hints = dict(schema_hints or {})
    id_col = 0
    type_col = 1
    if "id" in hints:
        if hints["id"] not in header:
            raise IngestError(f"hinted id column '{hints['id']}' not in header")
        id_col = header.index(hints["id"])
    if "type" in hints:
        if hints["type"] not in header:
            raise IngestError(f"hinted type column '{hints['type']}' not in header")
        type_col = header.index(hints["type"])
    if id_col == type_col:
        raise IngestError("id and type columns must differ")

    indicator_cols = [j for j in range(len(header)) if j not in (id_col, type_col)]
    indicators = tuple(_split_header(header[j]) for j in indicator_cols)
    schema = IndicatorSchema(indicators=indicators, type_field=header[type_col] or "type")

    entities: list[Entity] = []
    seen_ids: set[str] = set()
    for line_no, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # blank line
        if len(row) != len(header):
            raise IngestError(
                f"row {line_no}: expected {len(header)} columns, got {len(row)}"
            )
        eid = row[id_col].strip()
        if not eid:
            raise IngestError(f"row {line_no}: empty id")
        if eid in seen_ids:
            raise IngestError(f"duplicate id '{eid}' (row {line_no})")
        seen_ids.add(eid)
        values: list[float] = []
        for j, col in enumerate(indicator_cols):
            cell = row[col].strip()
            try:
                v = float(cell)
            except ValueError:
                raise IngestError(
                    f"row {line_no}, column '{schema.names[j]}': "
                    f"non-numeric value {cell!r}"
                ) from None
            if not math.isfinite(v):
                raise IngestError(
                    f"row {line_no}, column '{schema.names[j]}': non-finite value"
                )
            values.append(v)
        entities.append(
            Entity(id=eid, name=eid, type_label=row[type_col].strip(), raw=tuple(values))
        )

    if not entities:
        raise IngestError("no entities")
    if len(entities) < 2:
        raise IngestError("at least 2 entities required")
    return Dataset.build(schema, entities)


def normalize(ds: Dataset) -> NormalizedMatrix:
    """Min-max scale each indicator to [0, 1]; constant columns map to 0.0."""
    raw = np.asarray([e.raw for e in ds.entities], dtype=float)
    lo = np.asarray([s[0] for s in ds.norm_stats])
    hi = np.asarray([s[1] for s in ds.norm_stats])
    span = hi - lo
    out = np.zeros_like(raw)
    active = span > 0
    out[:, active] = (raw[:, active] - lo[active]) / span[active]
    return NormalizedMatrix(values=out, entity_order=ds.ids)


def _fmt(v: float) -> str:
    # repr round-trips doubles exactly; avoid trailing ".0" noise for integers
    return repr(int(v)) if v == int(v) and abs(v) < 1e15 else repr(v)


def export_dataset(ds: Dataset) -> str:
    """Render a dataset back to the ingestion format, lossless for raw values."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    head = ["id", ds.schema.type_field]
    for name, unit in ds.schema.indicators:
        head.append(f"{name} ({unit})" if unit else name)
    writer.writerow(head)
    for e in ds.entities:
        writer.writerow([e.id, e.type_label] + [_fmt(v) for v in e.raw])
    return buf.getvalue()
