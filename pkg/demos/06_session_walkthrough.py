"""Full session walkthrough: upload, drag, preview, save, compare.

This is the same state machine the HTTP API exposes, driven directly. The
comparison bundle at the end feeds the parallel-axes view: per-scheme ranks
and ratings, sample roles from the drag, box stats per indicator, and the
weight curves.
"""

from pathlib import Path

from ratebench import SessionStore
from ratebench.metrics import kendall_tau

HERE = Path(__file__).parent

store = SessionStore()  # pass data_dir=... to persist and replay sessions
sess = store.create_session((HERE / "data" / "banks.csv").read_text(encoding="utf-8"))
default_ranking = sess.results["default"].ranked_ids()
print(f"session {sess.id}: default top 5: {default_ranking[:5]}")

dragged = default_ranking[4]
preview = store.submit_drag(sess.id, dragged, 13)
print(f"\ndrag {dragged!r} 5 -> 13 trains three candidates:")
for which, slot in preview.candidates.items():
    moved = slot.result.entry(dragged).rank
    print(f"  {which:6s} re-ranks the dragged bank to {moved}")

store.save_scheme(sess.id, "type", "Type pass")
base2 = sess.results["s1"].ranked_ids()
store.submit_drag(sess.id, base2[7], 3)
store.save_scheme(sess.id, "global", "Global pass")

comp = store.comparison(sess.id)
print(f"\ncomparison axes: {[a['schemeId'] for a in comp['axes']]}")
print(f"dragged entity: {comp['draggedEntity']}")
roles = comp["sampleRoles"]
print(f"positive samples: {sorted(e for e, r in roles.items() if r == 'positive-sample')}")

orderings = {sid: list(sess.results[sid].ranked_ids()) for sid in sess.results}
print("\nscheme agreement (Kendall tau vs default):")
for sid, order in orderings.items():
    print(f"  {sid:8s} tau = {kendall_tau(order, orderings['default']):+.3f}")
