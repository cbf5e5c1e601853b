"""Rank scores, per-indicator contributions, and entropy-based ratings.

A weight scheme applied to the normalized matrix yields one signed
contribution per indicator and entity; the row sum is the rank score and
orders the entities. Scores are then rescaled to [0, 100], floored to
multiples of 5, and segmented by recursive entropy-minimizing splits into
at most five discrete ratings, 1 best.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

from .constraints import DragEvent
from .data import Dataset, NormalizedMatrix
from .trainer import WeightVector

__all__ = [
    "SCHEME_KINDS",
    "WeightScheme",
    "ScoredEntity",
    "RatingSegmentation",
    "RankingResult",
    "per_entity_weights",
    "score",
    "round_scores",
    "entropy_split",
    "build_segmentation",
    "assign_ratings",
    "rank_and_rate",
]

log = logging.getLogger(__name__)

SCHEME_KINDS = ("default", "local", "global", "type")

#: Breakpoints searched for; one more rating level than breakpoints.
MAX_BREAKPOINTS = 4


@dataclass(frozen=True)
class WeightScheme:
    """A named weight artifact: one vector, or one vector per type label."""

    id: str
    kind: str
    label: str
    weights: WeightVector | Mapping[str, WeightVector]
    created_from: DragEvent | None = None

    def __post_init__(self) -> None:
        if self.kind not in SCHEME_KINDS:
            raise ValueError(f"unknown scheme kind '{self.kind}'")
        is_map = isinstance(self.weights, Mapping)
        if (self.kind == "type") != is_map:
            raise ValueError("per-type weight map is required iff kind is 'type'")
        if self.kind == "default":
            w = self.weights.w
            if any(v != 1.0 / len(w) for v in w):
                raise ValueError("default scheme must carry uniform weights")

    @staticmethod
    def default(m: int, id: str = "default", label: str = "Default") -> "WeightScheme":
        uniform = WeightVector(w=tuple([1.0 / m] * m), objective=0.0, iterations=0)
        return WeightScheme(id=id, kind="default", label=label, weights=uniform)


@dataclass(frozen=True)
class ScoredEntity:
    """Score, signed contributions, rank, and (once assigned) a rating."""

    entity_id: str
    score: float
    contributions: tuple[float, ...]
    rank: int
    rating: int | None = None


@dataclass(frozen=True)
class RatingSegmentation:
    """Rounded scores plus the breakpoints separating rating segments."""

    breakpoints: tuple[int, ...]
    rounded_scores: Mapping[str, int]

    def __post_init__(self) -> None:
        if list(self.breakpoints) != sorted(set(self.breakpoints)):
            raise ValueError("breakpoints must be strictly increasing")
        for eid, v in self.rounded_scores.items():
            if v % 5 != 0 or not 0 <= v <= 100:
                raise ValueError(f"rounded score for '{eid}' is not a multiple of 5 in [0, 100]")

    def rating_of(self, rounded_value: int) -> int:
        return 1 + sum(1 for b in self.breakpoints if rounded_value <= b)


@dataclass(frozen=True)
class RankingResult:
    """One scheme's ordered, scored, and rated entities."""

    scheme_id: str
    entities: tuple[ScoredEntity, ...]
    segmentation: RatingSegmentation
    warnings: tuple[str, ...] = ()

    def ranked_ids(self) -> tuple[str, ...]:
        return tuple(e.entity_id for e in self.entities)

    def entry(self, entity_id: str) -> ScoredEntity:
        for e in self.entities:
            if e.entity_id == entity_id:
                return e
        raise KeyError(entity_id)


def per_entity_weights(
    ds: Dataset, scheme: WeightScheme
) -> tuple[np.ndarray, tuple[str, ...]]:
    """Materialize the weight row applied to each entity.

    For type schemes, entities whose label is absent from the map fall back
    to uniform weights; each such label is reported once as a warning.
    """
    m = ds.schema.width
    n = ds.size
    if scheme.kind == "type":
        assert isinstance(scheme.weights, Mapping)
        for label, wv in scheme.weights.items():
            if len(wv.w) != m:
                raise ValueError(
                    f"scheme '{scheme.id}': weight length {len(wv.w)} for type "
                    f"'{label}' does not match indicator count {m}"
                )
        missing = [t for t in ds.type_labels() if t not in scheme.weights]
        warnings = tuple(
            f"type '{t}' missing from scheme '{scheme.id}'; scored with uniform weights"
            for t in sorted(missing)
        )
        uniform = np.full(m, 1.0 / m)
        rows = np.empty((n, m))
        for i, e in enumerate(ds.entities):
            wv = scheme.weights.get(e.type_label)
            rows[i] = uniform if wv is None else wv.array
        return rows, warnings
    assert isinstance(scheme.weights, WeightVector)
    if len(scheme.weights.w) != m:
        raise ValueError(
            f"scheme '{scheme.id}': weight length {len(scheme.weights.w)} "
            f"does not match indicator count {m}"
        )
    return np.tile(scheme.weights.array, (n, 1)), ()


def _scored(nm: NormalizedMatrix, ds: Dataset, w_rows: np.ndarray) -> list[ScoredEntity]:
    contrib = w_rows * nm.values
    totals = contrib.sum(axis=1)
    order = sorted(range(ds.size), key=lambda i: (-totals[i], ds.entities[i].id))
    return [
        ScoredEntity(
            entity_id=ds.entities[i].id,
            score=float(totals[i]),
            contributions=tuple(float(v) for v in contrib[i]),
            rank=pos + 1,
        )
        for pos, i in enumerate(order)
    ]


def score(nm: NormalizedMatrix, ds: Dataset, scheme: WeightScheme) -> list[ScoredEntity]:
    """Score and rank every entity under a scheme (ratings not yet assigned).

    Ordering is by descending score, ties broken by ascending entity id.
    """
    if nm.entity_order != ds.ids:
        raise ValueError("normalized matrix is not aligned with the dataset")
    w_rows, warnings = per_entity_weights(ds, scheme)
    for msg in warnings:
        log.warning("%s", msg)
    return _scored(nm, ds, w_rows)


def round_scores(scored: Sequence[ScoredEntity]) -> RatingSegmentation:
    """Rescale raw scores so min maps to 0 and max to 100 (all-equal scores
    map to 50), then floor to the nearest lower multiple of 5."""
    if not scored:
        raise ValueError("no scored entities")
    s = np.asarray([e.score for e in scored])
    lo, hi = float(s.min()), float(s.max())
    if hi == lo:
        scaled = np.full(s.size, 50.0)
    else:
        scaled = (s - lo) / (hi - lo) * 100.0
    rounded = (np.floor(scaled / 5.0) * 5.0).astype(int)
    return RatingSegmentation(
        breakpoints=(),
        rounded_scores={e.entity_id: int(v) for e, v in zip(scored, rounded)},
    )


def _partition_quality(
    distinct: Sequence[int], counts: Mapping[int, int], total: int, bounds: Sequence[int]
) -> float:
    # Size-weighted entropy of the partition induced by sorted bounds.
    # Scalar math with exactly-rounded sums (math.fsum), so equal partitions
    # produce bit-equal qualities regardless of evaluation order.
    parts: list[float] = []
    start = 0
    edges = list(bounds) + [distinct[-1]]
    for edge in edges:
        seg = [v for v in distinct[start:] if v <= edge]
        if not seg:
            continue
        start += len(seg)
        seg_n = sum(counts[v] for v in seg)
        terms = []
        for v in seg:
            p = counts[v] / seg_n
            terms.append(p * math.log(p))
        entropy = -math.fsum(terms)
        parts.append(seg_n / total * entropy)
    return math.fsum(parts)


def entropy_split(rounded: Iterable[int]) -> list[int]:
    """Greedily pick up to four breakpoints minimizing weighted entropy.

    Candidates are the distinct rounded values except the maximum; a
    breakpoint at u separates x <= u from x > u inside its segment. Each
    step re-evaluates every unused candidate against the whole current
    partition and keeps the one with the smallest size-weighted entropy,
    ties going to the smaller value. Returned in selection order; fewer
    than four breakpoints come back when candidates run out.
    """
    values = list(rounded)
    if not values:
        raise ValueError("no scores to split")
    counts = Counter(values)
    distinct = sorted(counts)
    total = len(values)
    candidates = distinct[:-1]
    chosen: list[int] = []
    for _ in range(MAX_BREAKPOINTS):
        best_u: int | None = None
        best_q = math.inf
        for u in candidates:
            if u in chosen:
                continue
            q = _partition_quality(distinct, counts, total, sorted(chosen + [u]))
            if q < best_q:
                best_q = q
                best_u = u
        if best_u is None:
            break
        chosen.append(best_u)
    return chosen


def build_segmentation(scored: Sequence[ScoredEntity]) -> RatingSegmentation:
    """Round the scores and search the entropy-minimizing breakpoints."""
    seg = round_scores(scored)
    breaks = entropy_split(seg.rounded_scores.values())
    return RatingSegmentation(
        breakpoints=tuple(sorted(breaks)), rounded_scores=seg.rounded_scores
    )


def assign_ratings(
    scored: Sequence[ScoredEntity], seg: RatingSegmentation
) -> list[ScoredEntity]:
    """Fill ratings: the highest-score segment is 1, the lowest is worst."""
    return [
        replace(e, rating=seg.rating_of(seg.rounded_scores[e.entity_id]))
        for e in scored
    ]


def rank_and_rate(nm: NormalizedMatrix, ds: Dataset, scheme: WeightScheme) -> RankingResult:
    """Full pass from weights to rated ranking for one scheme."""
    if nm.entity_order != ds.ids:
        raise ValueError("normalized matrix is not aligned with the dataset")
    w_rows, warnings = per_entity_weights(ds, scheme)
    scored = _scored(nm, ds, w_rows)
    seg = build_segmentation(scored)
    return RankingResult(
        scheme_id=scheme.id,
        entities=tuple(assign_ratings(scored, seg)),
        segmentation=seg,
        warnings=warnings,
    )
