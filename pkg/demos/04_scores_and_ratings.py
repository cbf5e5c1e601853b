"""Score, rank, and discretize into five ratings via entropy splitting.

Scores are rescaled to [0, 100], floored to multiples of 5, and segmented
by four entropy-minimizing breakpoints; rating 1 is best. The table shows
how each bank's score decomposes into signed per-indicator contributions.
"""

from pathlib import Path

from ratebench import WeightScheme, WeightVector, ingest, normalize, rank_and_rate

HERE = Path(__file__).parent

ds = ingest((HERE / "data" / "banks.csv").read_text(encoding="utf-8"))
nm = normalize(ds)

# deliberately skewed weights: reward provision coverage, punish bad loans
weights = WeightVector(w=(0.35, 0.30, 0.10, -0.15, 0.05, 0.05), objective=0.0, iterations=0)
scheme = WeightScheme(id="analyst", kind="global", label="Analyst weights", weights=weights)

result = rank_and_rate(nm, ds, scheme)
print(f"breakpoints (rounded-score thresholds): {result.segmentation.breakpoints}\n")
print(f"{'rank':>4} {'rating':>6} {'rounded':>7}  bank")
for e in result.entities:
    rounded = result.segmentation.rounded_scores[e.entity_id]
    print(f"{e.rank:>4} {e.rating:>6} {rounded:>7}  {e.entity_id}")

top = result.entities[0]
print(f"\ncontribution breakdown for {top.entity_id} (score {top.score:.4f}):")
for name, c in zip(ds.schema.names, top.contributions):
    direction = "pushes up" if c > 0 else "pushes down" if c < 0 else "neutral"
    print(f"  {name:30s} {c:+.4f}  {direction}")
