"""Fit the pairwise hinge-loss ranker and read the learned indicator weights.

Positive weights mean higher values push a bank up the ranking, negative
weights the opposite. The per-type run shows how the same drag implies a
different weighting inside each institution category.
"""

from pathlib import Path

from ratebench import (
    DragEvent,
    TrainerConfig,
    WeightScheme,
    derive_global,
    derive_type,
    ingest,
    normalize,
    score,
    train,
    train_per_type,
)

HERE = Path(__file__).parent

ds = ingest((HERE / "data" / "banks.csv").read_text(encoding="utf-8"))
nm = normalize(ds)
base = tuple(e.entity_id for e in score(nm, ds, WeightScheme.default(ds.schema.width)))
drag = DragEvent(entity_id=base[4], from_rank=5, to_rank=13, base_ranking=base)
cfg = TrainerConfig(c=10.0, tol=1e-9)


def show(weights):
    for name, w in zip(ds.schema.names, weights):
        bar = "#" * int(abs(w) * 12 / (max(abs(v) for v in weights) or 1) + 1)
        print(f"    {name:30s} {w:+8.3f} {bar}")


wv = train(derive_global(drag, ds, nm).pairs, cfg)
print(f"global weights (objective {wv.objective:.4f}, {wv.iterations} sweeps):")
show(wv.w)

per_type = train_per_type(derive_type(drag, ds, nm), cfg)
for label, tv in per_type.weights.items():
    print(f"\n{label}:")
    show(tv.w)
