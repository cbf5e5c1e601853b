"""Load the demo bank table and inspect min-max normalization.

Indicators live on wildly different scales (asset size in the tens of
thousands, ratios in single digits), so every downstream computation works
on the [0, 1] normalized matrix instead of raw values.
"""

from pathlib import Path

from ratebench import ingest, normalize

HERE = Path(__file__).parent

ds = ingest((HERE / "data" / "banks.csv").read_text(encoding="utf-8"))
print(f"{ds.size} banks, {ds.schema.width} indicators, types: {ds.type_labels()}")

for name, (lo, hi) in zip(ds.schema.names, ds.norm_stats):
    print(f"  {name:30s} range [{lo:>10.2f}, {hi:>10.2f}]")

nm = normalize(ds)
first = ds.entities[0]
print(f"\n{first.name} ({first.type_label})")
for name, raw, scaled in zip(ds.schema.names, first.raw, nm.row(first.id)):
    print(f"  {name:30s} raw {raw:>10.2f} -> normalized {scaled:.3f}")
