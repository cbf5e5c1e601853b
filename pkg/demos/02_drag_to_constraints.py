"""Turn one drag into training pairs under the three derivation rules.

The analyst story: the bank sitting at rank 5 of the default ranking is
judged overrated and dragged down to rank 13. Each rule converts that
single gesture into labeled difference vectors.
"""

from pathlib import Path

from ratebench import (
    DragEvent,
    WeightScheme,
    derive_global,
    derive_local,
    derive_type,
    ingest,
    normalize,
    score,
)

HERE = Path(__file__).parent

ds = ingest((HERE / "data" / "banks.csv").read_text(encoding="utf-8"))
nm = normalize(ds)

base = tuple(e.entity_id for e in score(nm, ds, WeightScheme.default(ds.schema.width)))
dragged = base[4]
drag = DragEvent(entity_id=dragged, from_rank=5, to_rank=13, base_ranking=base)
print(f"drag: {dragged!r} from rank 5 to rank 13\n")

local = derive_local(drag, nm)
print(f"local rule: {len(local.pairs)} ordered pairs over the rank-11..16 window")
window = sorted({p.left_id for p in local.pairs} | {p.right_id for p in local.pairs})
print(f"  marked rows: {window}")

glob = derive_global(drag, ds, nm)
pos = {p.left_id for p in glob.pairs if p.role == "positive-sample"} - {dragged}
neg = {p.left_id for p in glob.pairs if p.role == "negative-sample"} - {dragged}
print(f"\nglobal rule: {len(glob.pairs)} pairs (mirrors included)")
print(f"  sampled above (beat the dragged bank): {sorted(pos)}")
print(f"  sampled below (beaten by it):          {sorted(neg)}")

typed = derive_type(drag, ds, nm)
print("\ntype rule: adjacent pairs inside each category's own ranking")
for label, pairs in typed.pairs_by_type.items():
    print(f"  {label:38s} {len(pairs):2d} pairs")
