"""Turn a drag-to-rank interaction into labeled pairwise training data.

Three derivation rules produce difference-vector constraint sets from a
single drag:

* local: all ordered pairs over the dragged row plus its five nearest
  neighbors in the post-drag ranking (window clamped at the list ends),
* global: entities sampled from above and below the drop position, in
  proportion to the type frequencies on each side, each paired against
  the dragged row,
* type: adjacent-pair constraints taken around the drop position inside
  every type's own ranking, one pair list per type label.

Every pair carries the exact difference of two normalized rows, a +1/-1
preference label, and a sample role relative to the dragged entity (the
role drives the comparison view, not the training).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .data import Dataset, NormalizedMatrix

__all__ = [
    "POSITIVE_SAMPLE",
    "NEGATIVE_SAMPLE",
    "MARKED_ROWS",
    "SAMPLE_BUDGET",
    "DragEvent",
    "TrainingPair",
    "ConstraintSet",
    "apply_drag",
    "derive_local",
    "derive_global",
    "derive_type",
    "constraint_set_doc",
]

POSITIVE_SAMPLE = "positive-sample"
NEGATIVE_SAMPLE = "negative-sample"

#: Number of marked rows the local rule trains on (dragged row included).
MARKED_ROWS = 6
#: Per-side sampling budget of the global rule.
SAMPLE_BUDGET = 6
#: Adjacent pairs taken on each side of the drop position by the type rule.
_ADJACENT_SPAN = 3


@dataclass(frozen=True)
class DragEvent:
    """An analyst moving one entity to a new rank in a visible ranking."""

    entity_id: str
    from_rank: int
    to_rank: int
    base_ranking: tuple[str, ...]

    def __post_init__(self) -> None:
        n = len(self.base_ranking)
        if len(set(self.base_ranking)) != n:
            raise ValueError("base ranking contains duplicate ids")
        if self.entity_id not in self.base_ranking:
            raise ValueError(f"entity '{self.entity_id}' not in base ranking")
        if not 1 <= self.to_rank <= n:
            raise ValueError(f"target rank {self.to_rank} out of range 1..{n}")
        expected = self.base_ranking.index(self.entity_id) + 1
        if self.from_rank != expected:
            raise ValueError(
                f"from_rank {self.from_rank} does not match position {expected}"
            )


@dataclass(frozen=True)
class TrainingPair:
    """A labeled difference vector between two entities.

    diff is normalized(left) - normalized(right); label is +1 when the left
    entity is preferred and -1 otherwise.
    """

    diff: tuple[float, ...]
    label: int
    left_id: str
    right_id: str
    role: str

    def __post_init__(self) -> None:
        if self.label not in (1, -1):
            raise ValueError("label must be +1 or -1")
        if self.role not in (POSITIVE_SAMPLE, NEGATIVE_SAMPLE):
            raise ValueError(f"unknown role '{self.role}'")

    @property
    def preferred_id(self) -> str:
        return self.left_id if self.label == 1 else self.right_id


@dataclass(frozen=True)
class ConstraintSet:
    """Training pairs derived from one drag under one scheme.

    Local and global sets fill ``pairs``; the type set fills
    ``pairs_by_type`` with one entry per trainable type label.
    """

    scheme: str
    source_drag: DragEvent
    pairs: tuple[TrainingPair, ...] = ()
    pairs_by_type: Mapping[str, tuple[TrainingPair, ...]] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.scheme not in ("local", "global", "type"):
            raise ValueError(f"unknown scheme '{self.scheme}'")

    def all_pairs(self) -> tuple[TrainingPair, ...]:
        if self.scheme == "type":
            out: list[TrainingPair] = []
            for label in self.pairs_by_type:
                out.extend(self.pairs_by_type[label])
            return tuple(out)
        return self.pairs

    def participants(self) -> tuple[str, ...]:
        """Entities appearing in any pair, dragged row excluded, by id."""
        dragged = self.source_drag.entity_id
        seen = {
            eid
            for p in self.all_pairs()
            for eid in (p.left_id, p.right_id)
            if eid != dragged
        }
        return tuple(sorted(seen))


def apply_drag(drag: DragEvent) -> tuple[str, ...]:
    """The ranking after moving the dragged entity to its target rank."""
    rest = [e for e in drag.base_ranking if e != drag.entity_id]
    rest.insert(drag.to_rank - 1, drag.entity_id)
    return tuple(rest)


def _make_pair(
    nm: NormalizedMatrix,
    left: str,
    right: str,
    label: int,
    role: str,
) -> TrainingPair:
    diff = nm.row(left) - nm.row(right)
    return TrainingPair(
        diff=tuple(float(v) for v in diff),
        label=label,
        left_id=left,
        right_id=right,
        role=role,
    )


def _role_of(preferred: str, dragged: str, post_rank: Mapping[str, int]) -> str:
    # A pair counts as a positive sample when its preferred member outranks
    # the dragged row's post-drag position, otherwise as a negative sample.
    return (
        POSITIVE_SAMPLE
        if post_rank[preferred] < post_rank[dragged]
        else NEGATIVE_SAMPLE
    )


def _post_ranks(post: tuple[str, ...]) -> dict[str, int]:
    return {eid: i + 1 for i, eid in enumerate(post)}


def derive_local(drag: DragEvent, nm: NormalizedMatrix) -> ConstraintSet:
    """All ordered pairs over the dragged row's post-drag rank neighborhood.

    The marked window is the contiguous block of min(6, n) ranks around the
    drop position (two above, three below when unclamped), which yields
    min(6, n) * (min(6, n) - 1) ordered pairs.
    """
    n = len(drag.base_ranking)
    if n < 2:
        raise ValueError("insufficient entities")
    post = apply_drag(drag)
    ranks = _post_ranks(post)
    size = min(MARKED_ROWS, n)
    start = max(1, min(drag.to_rank - 2, n - size + 1))
    marked = post[start - 1 : start - 1 + size]

    pairs: list[TrainingPair] = []
    for a, left in enumerate(marked):
        for b, right in enumerate(marked):
            if a == b:
                continue
            label = 1 if a < b else -1
            preferred = left if label == 1 else right
            pairs.append(
                _make_pair(nm, left, right, label, _role_of(preferred, drag.entity_id, ranks))
            )
    return ConstraintSet(scheme="local", source_drag=drag, pairs=tuple(pairs))


def _largest_remainder(counts: dict[str, int], budget: int) -> dict[str, int]:
    """Apportion ``budget`` across labels proportionally to ``counts``.

    Floors of the exact quotas are topped up one by one in order of largest
    fractional remainder; remainder ties go to the larger count, then the
    lexicographically smaller label.
    """
    total = sum(counts.values())
    quotas = {t: budget * c / total for t, c in counts.items()}
    alloc = {t: int(q) for t, q in quotas.items()}
    leftover = budget - sum(alloc.values())
    order = sorted(
        counts,
        key=lambda t: (-(quotas[t] - alloc[t]), -counts[t], t),
    )
    for t in order[:leftover]:
        alloc[t] += 1
    return alloc


def _sample_segment(
    segment: tuple[str, ...],
    ds: Dataset,
    ranks: Mapping[str, int],
    k: int,
) -> list[str]:
    """Pick min(6, |segment|) entities, type-proportionally, nearest to rank k."""
    if not segment:
        return []
    budget = min(SAMPLE_BUDGET, len(segment))
    counts: dict[str, int] = {}
    for eid in segment:
        t = ds.type_of(eid)
        counts[t] = counts.get(t, 0) + 1
    alloc = _largest_remainder(counts, budget)
    chosen: list[str] = []
    for t, take in alloc.items():
        members = [eid for eid in segment if ds.type_of(eid) == t]
        members.sort(key=lambda eid: (abs(ranks[eid] - k), ranks[eid]))
        chosen.extend(members[:take])
    chosen.sort(key=lambda eid: ranks[eid])
    return chosen


def derive_global(
    drag: DragEvent, ds: Dataset, nm: NormalizedMatrix
) -> ConstraintSet:
    """Pairs between the dragged row and type-proportional samples of both
    sides of the drop position, mirrored for label balance."""
    post = apply_drag(drag)
    ranks = _post_ranks(post)
    k = drag.to_rank
    above = post[: k - 1]
    below = post[k:]
    dragged = drag.entity_id

    pairs: list[TrainingPair] = []
    for q in _sample_segment(above, ds, ranks, k):
        pairs.append(_make_pair(nm, q, dragged, 1, POSITIVE_SAMPLE))
        pairs.append(_make_pair(nm, dragged, q, -1, POSITIVE_SAMPLE))
    for p in _sample_segment(below, ds, ranks, k):
        pairs.append(_make_pair(nm, p, dragged, -1, NEGATIVE_SAMPLE))
        pairs.append(_make_pair(nm, dragged, p, 1, NEGATIVE_SAMPLE))
    return ConstraintSet(scheme="global", source_drag=drag, pairs=tuple(pairs))


def derive_type(
    drag: DragEvent, ds: Dataset, nm: NormalizedMatrix
) -> ConstraintSet:
    """Adjacent-pair constraints around the drop position in each type's own
    ranking, mirrored; types with fewer than 2 entities are skipped."""
    post = apply_drag(drag)
    ranks = _post_ranks(post)
    k = drag.to_rank
    dragged = drag.entity_id
    dragged_type = ds.type_of(dragged)

    by_type: dict[str, tuple[TrainingPair, ...]] = {}
    warnings: list[str] = []
    for label in sorted(set(ds.type_labels())):
        members = [eid for eid in post if ds.type_of(eid) == label]
        if len(members) < 2:
            warnings.append(f"type '{label}' has fewer than 2 entities; skipped")
            continue
        if label == dragged_type:
            idx = members.index(dragged) + 1
        else:
            # insertion position of an entity holding global rank k
            idx = 1 + sum(1 for eid in members if ranks[eid] < k)
        lo = max(1, idx - _ADJACENT_SPAN)
        hi = min(len(members), idx + _ADJACENT_SPAN)
        pairs: list[TrainingPair] = []
        for p in range(lo, hi):
            left, right = members[p - 1], members[p]
            role = _role_of(left, dragged, ranks)
            pairs.append(_make_pair(nm, left, right, 1, role))
            pairs.append(_make_pair(nm, right, left, -1, role))
        by_type[label] = tuple(pairs)

    if not by_type:
        raise ValueError("no trainable type")
    return ConstraintSet(
        scheme="type",
        source_drag=drag,
        pairs_by_type=by_type,
        warnings=tuple(warnings),
    )


def _pair_doc(p: TrainingPair) -> dict:
    return {
        "left": p.left_id,
        "right": p.right_id,
        "label": p.label,
        "role": p.role,
        "diff": list(p.diff),
    }


def _drag_doc(d: DragEvent) -> dict:
    return {
        "entityId": d.entity_id,
        "fromRank": d.from_rank,
        "toRank": d.to_rank,
        "baseRanking": list(d.base_ranking),
    }


def constraint_set_doc(cs: ConstraintSet) -> dict:
    """JSON-shaped document for audit logs and the comparison view."""
    doc: dict = {"scheme": cs.scheme, "drag": _drag_doc(cs.source_drag)}
    if cs.scheme == "type":
        doc["pairsByType"] = {
            t: [_pair_doc(p) for p in ps] for t, ps in cs.pairs_by_type.items()
        }
    else:
        doc["pairs"] = [_pair_doc(p) for p in cs.pairs]
    if cs.warnings:
        doc["warnings"] = list(cs.warnings)
    return doc
