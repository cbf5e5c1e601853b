from __future__ import annotations

import numpy as np
import pytest

from ratebench import Dataset, Entity, IndicatorSchema, ingest, normalize

TYPE_LABELS = (
    "Large State-owned Commercial Bank",
    "Joint-stock Commercial Bank",
    "City Commercial Bank",
    "Rural Commercial Bank",
)

INDICATORS = (
    "asset_size",
    "provision_coverage",
    "capital_adequacy_ratio",
    "non_performing_loans_ratio",
    "asset_profit_ratio",
    "capital_profit_ratio",
)


def synthetic_csv(n=30, m=6, n_types=4, seed=11) -> str:
    """Deterministic synthetic table in the ingestion format."""
    rng = np.random.default_rng(seed)
    names = INDICATORS[:m] if m <= len(INDICATORS) else tuple(
        f"indicator_{j}" for j in range(m)
    )
    lines = ["id,bank_type," + ",".join(names)]
    for i in range(n):
        vals = rng.uniform(0.0, 100.0, m).round(3)
        label = TYPE_LABELS[i % n_types]
        lines.append(f"Bank {i:02d},{label}," + ",".join(repr(float(v)) for v in vals))
    return "\n".join(lines) + "\n"


def dataset_from_matrix(values, types=None, ids=None) -> Dataset:
    """Build a dataset straight from a raw value matrix."""
    values = np.asarray(values, dtype=float)
    n, m = values.shape
    ids = ids or [f"e{i:02d}" for i in range(n)]
    types = types or ["T"] * n
    schema = IndicatorSchema(
        indicators=tuple((f"x{j}", "") for j in range(m)), type_field="type"
    )
    entities = [
        Entity(id=ids[i], name=ids[i], type_label=types[i], raw=tuple(values[i]))
        for i in range(n)
    ]
    return Dataset.build(schema, entities)


@pytest.fixture
def bank_csv() -> str:
    # Small hand-written table; the first two rows carry published example
    # figures (asset size, provision coverage) used as ingestion checks.
    return (
        "bank,bank_type,asset_size,provision_coverage\n"
        "Beijing Rural Commercial Bank,Rural Commercial Bank,8811,1068.87\n"
        "Bank of Communications,Large State-owned Commercial Bank,95312,173.13\n"
        "Guangzhou Bank,City Commercial Bank,12001,310.5\n"
        "Taizhou Bank,City Commercial Bank,4305,680.2\n"
        "Ping'An Bank,Joint-stock Commercial Bank,55100,289.9\n"
        "Harbor Rural Commercial Bank,Rural Commercial Bank,6120,512.4\n"
    )


@pytest.fixture
def thirty_banks() -> str:
    return synthetic_csv(n=30, m=6, n_types=4, seed=11)


@pytest.fixture
def thirty_dataset(thirty_banks):
    ds = ingest(thirty_banks)
    return ds, normalize(ds)
