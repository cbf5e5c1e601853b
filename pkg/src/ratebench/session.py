"""Session state, persistence, and the operations behind the HTTP API.

A session owns one immutable dataset, an ordered list of weight schemes
(always starting with the uniform default), cached ranking results and
projections, and an append-only audit log of drags and saves. Sessions are
persisted as one JSON-lines document per session id; reloading replays the
audit log, which reproduces every scheme, ranking, rating, and projection
exactly because the whole pipeline is deterministic.
"""

from __future__ import annotations

import json
import logging
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping

import numpy as np

from .constraints import (
    ConstraintSet,
    DragEvent,
    apply_drag,
    constraint_set_doc,
    derive_global,
    derive_local,
    derive_type,
)
from .data import Dataset, NormalizedMatrix, ingest, normalize
from .projection import (
    ProjectionError,
    ProjectionParams,
    ProjectionResult,
    effective_params,
    project,
)
from .scoring import RankingResult, WeightScheme, rank_and_rate
from .trainer import TrainerConfig, WeightVector, train, train_per_type

__all__ = [
    "UnknownResource",
    "ConflictError",
    "PreviewSlot",
    "DragPreview",
    "Session",
    "SessionStore",
    "ranking_doc",
    "scheme_doc",
    "session_summary",
    "preview_doc",
]

log = logging.getLogger(__name__)

SAVEABLE_KINDS = ("local", "global", "type")


class UnknownResource(ValueError):
    """Lookup of a session, scheme, or entity that does not exist."""


class ConflictError(ValueError):
    """Operation incompatible with the session's current state."""


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class PreviewSlot:
    """One candidate scheme produced by a drag, not yet saved."""

    scheme: WeightScheme
    result: RankingResult
    constraint_set: ConstraintSet
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class DragPreview:
    """The three candidate schemes of the most recent drag."""

    drag: DragEvent
    base_scheme_id: str
    candidates: Mapping[str, PreviewSlot | None]
    errors: Mapping[str, str]


class Session:
    """Mutable per-dataset workspace; mutations are serialized by a lock."""

    def __init__(
        self,
        session_id: str,
        created_at: str,
        source_text: str,
        dataset: Dataset,
        nm: NormalizedMatrix,
        default_scheme: WeightScheme,
        default_result: RankingResult,
    ):
        self.id = session_id
        self.created_at = created_at
        self.source_text = source_text
        self.dataset = dataset
        self.nm = nm
        self.schemes: list[WeightScheme] = [default_scheme]
        self.results: dict[str, RankingResult] = {default_scheme.id: default_result}
        self.constraints: dict[str, ConstraintSet] = {}
        self.projections: dict[str, ProjectionResult] = {}
        self.audit: list[dict] = []
        self.pending: DragPreview | None = None
        self.lock = threading.Lock()

    def scheme(self, scheme_id: str) -> WeightScheme:
        for s in self.schemes:
            if s.id == scheme_id:
                return s
        raise UnknownResource(f"unknown scheme '{scheme_id}'")


class SessionStore:
    """Session registry with optional append-only disk persistence."""

    def __init__(
        self,
        data_dir: str | Path | None = None,
        trainer_config: TrainerConfig = TrainerConfig(),
        projection_params: ProjectionParams = ProjectionParams(),
    ):
        self.data_dir = Path(data_dir) if data_dir is not None else None
        if self.data_dir is not None:
            self.data_dir.mkdir(parents=True, exist_ok=True)
        self.trainer_config = trainer_config
        self.projection_params = projection_params
        self._sessions: dict[str, Session] = {}

    # -- lookup / lifecycle -------------------------------------------------

    def get(self, session_id: str) -> Session:
        sess = self._sessions.get(session_id)
        if sess is None:
            raise UnknownResource(f"unknown session '{session_id}'")
        return sess

    def session_ids(self) -> tuple[str, ...]:
        return tuple(self._sessions)

    def create_session(self, source_text: str, session_id: str | None = None) -> Session:
        """Ingest an upload and open a session with the default scheme scored."""
        sid = session_id or uuid.uuid4().hex[:12]
        if sid in self._sessions:
            raise ConflictError(f"session '{sid}' already exists")
        sess = self._build_session(sid, source_text, _now())
        self._sessions[sid] = sess
        self._persist(
            sess, {"kind": "init", "at": sess.created_at, "sessionId": sid, "source": source_text}
        )
        return sess

    def _build_session(self, sid: str, source_text: str, created_at: str) -> Session:
        ds = ingest(source_text)
        nm = normalize(ds)
        default = WeightScheme.default(ds.schema.width, id="default", label="Default")
        result = rank_and_rate(nm, ds, default)
        return Session(sid, created_at, source_text, ds, nm, default, result)

    # -- drag / preview -----------------------------------------------------

    def submit_drag(
        self,
        session_id: str,
        entity_id: str,
        to_rank: int,
        base_scheme_id: str | None = None,
    ) -> DragPreview:
        """Derive and train all three candidate schemes for one drag.

        Nothing is persisted beyond the audit record; the preview replaces
        any earlier unsaved one.
        """
        sess = self.get(session_id)
        with sess.lock:
            return self._apply_drag(sess, entity_id, to_rank, base_scheme_id, persist=True)

    def _apply_drag(
        self,
        sess: Session,
        entity_id: str,
        to_rank: int,
        base_scheme_id: str | None,
        persist: bool,
        at: str | None = None,
        expected_base: list[str] | None = None,
    ) -> DragPreview:
        base_scheme = sess.schemes[-1] if base_scheme_id is None else sess.scheme(base_scheme_id)
        base_ranking = sess.results[base_scheme.id].ranked_ids()
        if entity_id not in base_ranking:
            raise UnknownResource(f"unknown entity id '{entity_id}'")
        if not isinstance(to_rank, int) or not 1 <= to_rank <= len(base_ranking):
            raise ValueError(f"target rank {to_rank} out of range 1..{len(base_ranking)}")
        if expected_base is not None and list(base_ranking) != expected_base:
            raise ConflictError("audit replay diverged: base ranking mismatch")
        drag = DragEvent(
            entity_id=entity_id,
            from_rank=base_ranking.index(entity_id) + 1,
            to_rank=to_rank,
            base_ranking=base_ranking,
        )

        candidates: dict[str, PreviewSlot | None] = {}
        errors: dict[str, str] = {}
        for which in SAVEABLE_KINDS:
            try:
                candidates[which] = self._train_candidate(sess, which, drag)
            except ValueError as exc:
                candidates[which] = None
                errors[which] = str(exc)
                log.warning("scheme '%s' failed for drag on '%s': %s", which, entity_id, exc)

        event = {
            "kind": "drag",
            "at": at or _now(),
            "baseScheme": base_scheme.id,
            "entityId": entity_id,
            "fromRank": drag.from_rank,
            "toRank": to_rank,
            "baseRanking": list(base_ranking),
        }
        sess.audit.append(event)
        if persist:
            self._persist(sess, event)
        sess.pending = DragPreview(
            drag=drag,
            base_scheme_id=base_scheme.id,
            candidates=candidates,
            errors=errors,
        )
        return sess.pending

    def _train_candidate(self, sess: Session, which: str, drag: DragEvent) -> PreviewSlot:
        notes: tuple[str, ...] = ()
        if which == "local":
            cs = derive_local(drag, sess.nm)
            weights: WeightVector | dict[str, WeightVector] = train(cs.pairs, self.trainer_config)
        elif which == "global":
            cs = derive_global(drag, sess.dataset, sess.nm)
            weights = train(cs.pairs, self.trainer_config)
        else:
            cs = derive_type(drag, sess.dataset, sess.nm)
            per_type = train_per_type(cs, self.trainer_config)
            if not per_type.weights:
                raise ValueError(
                    "no trainable type: " + "; ".join(
                        f"{t}: {msg}" for t, msg in per_type.failed.items()
                    )
                )
            weights = dict(per_type.weights)
            notes = cs.warnings + tuple(
                f"type '{t}' not trained: {msg}" for t, msg in per_type.failed.items()
            )
        scheme = WeightScheme(
            id=f"preview-{which}",
            kind=which,
            label=f"{which.capitalize()} (preview)",
            weights=weights,
            created_from=drag,
        )
        result = rank_and_rate(sess.nm, sess.dataset, scheme)
        return PreviewSlot(scheme=scheme, result=result, constraint_set=cs, notes=notes)

    # -- save ---------------------------------------------------------------

    def save_scheme(
        self, session_id: str, which: str, label: str | None = None
    ) -> WeightScheme:
        """Append the chosen candidate of the pending preview to the session.

        The preview is single-consume: a second save without a new drag is
        rejected.
        """
        sess = self.get(session_id)
        with sess.lock:
            return self._apply_save(sess, which, label, persist=True)

    def _apply_save(
        self, sess: Session, which: str, label: str | None, persist: bool, at: str | None = None
    ) -> WeightScheme:
        if which not in SAVEABLE_KINDS:
            raise ValueError(f"unknown scheme kind '{which}'")
        if sess.pending is None:
            raise ConflictError("no pending preview to save")
        slot = sess.pending.candidates.get(which)
        if slot is None:
            raise ConflictError(
                f"scheme '{which}' was not trainable for the pending drag: "
                f"{sess.pending.errors.get(which, 'unknown failure')}"
            )
        seq = len(sess.schemes)
        scheme_id = f"s{seq}"
        final_label = label or f"Scheme {seq} ({which})"
        scheme = replace(slot.scheme, id=scheme_id, label=final_label)
        result = replace(slot.result, scheme_id=scheme_id)
        sess.schemes.append(scheme)
        sess.results[scheme_id] = result
        sess.constraints[scheme_id] = slot.constraint_set
        try:
            params = effective_params(sess.dataset.size, self.projection_params)
            sess.projections[scheme_id] = project(sess.nm, sess.dataset, scheme, params)
        except ProjectionError as exc:
            log.warning("projection for scheme '%s' skipped: %s", scheme_id, exc)
        sess.pending = None
        event = {
            "kind": "save",
            "at": at or _now(),
            "which": which,
            "label": final_label,
            "schemeId": scheme_id,
        }
        sess.audit.append(event)
        if persist:
            self._persist(sess, event)
        return scheme

    # -- reads --------------------------------------------------------------

    def rankings(self, session_id: str, scheme_id: str | None = None) -> RankingResult:
        sess = self.get(session_id)
        sid = scheme_id or "default"
        sess.scheme(sid)
        return self.results_for(sess, sid)

    def results_for(self, sess: Session, scheme_id: str) -> RankingResult:
        result = sess.results.get(scheme_id)
        if result is None:
            raise UnknownResource(f"no ranking for scheme '{scheme_id}'")
        return result

    def projection(self, session_id: str, scheme_id: str) -> ProjectionResult:
        sess = self.get(session_id)
        scheme = sess.scheme(scheme_id)
        cached = sess.projections.get(scheme_id)
        if cached is not None:
            return cached
        params = effective_params(sess.dataset.size, self.projection_params)
        result = project(sess.nm, sess.dataset, scheme, params)
        sess.projections[scheme_id] = result
        return result

    def comparison(self, session_id: str) -> dict:
        """Axes, roles, box stats, and weight curves over all saved schemes."""
        sess = self.get(session_id)
        if len(sess.schemes) < 2:
            raise ConflictError("nothing to compare: save at least one scheme first")
        latest = sess.schemes[-1]
        cs = sess.constraints[latest.id]
        drag = cs.source_drag
        post = apply_drag(drag)
        post_rank = {eid: i + 1 for i, eid in enumerate(post)}
        dragged = drag.entity_id

        roles: dict[str, str] = {eid: "none" for eid in sess.dataset.ids}
        for eid in cs.participants():
            roles[eid] = (
                "positive-sample" if post_rank[eid] < post_rank[dragged] else "negative-sample"
            )

        axes = []
        for scheme in sess.schemes:
            result = sess.results[scheme.id]
            axes.append(
                {
                    "schemeId": scheme.id,
                    "label": scheme.label,
                    "kind": scheme.kind,
                    "entities": {
                        e.entity_id: {"rank": e.rank, "rating": e.rating}
                        for e in result.entities
                    },
                }
            )

        rank_deltas = []
        for a, b in zip(axes, axes[1:]):
            deltas = {
                eid: a["entities"][eid]["rank"] - b["entities"][eid]["rank"]
                for eid in sess.dataset.ids
            }
            rank_deltas.append(
                {"fromScheme": a["schemeId"], "toScheme": b["schemeId"], "deltas": deltas}
            )

        names = sess.dataset.schema.names
        box_stats: dict[str, dict] = {}
        for j, name in enumerate(names):
            per_role = {}
            for role_key, role_name in (("negative", "negative-sample"), ("positive", "positive-sample")):
                members = [eid for eid in sess.dataset.ids if roles[eid] == role_name]
                if not members:
                    per_role[role_key] = None
                    continue
                vals = np.asarray([float(sess.nm.row(eid)[j]) for eid in members])
                q = np.percentile(vals, [0, 25, 50, 75, 100])
                per_role[role_key] = {
                    "min": float(q[0]),
                    "q1": float(q[1]),
                    "median": float(q[2]),
                    "q3": float(q[3]),
                    "max": float(q[4]),
                }
            box_stats[name] = per_role

        curves = [scheme_doc(s, names) for s in sess.schemes]
        return {
            "sessionId": sess.id,
            "draggedEntity": dragged,
            "axes": axes,
            "rankDeltas": rank_deltas,
            "sampleRoles": roles,
            "boxStats": box_stats,
            "weightsCurve": curves,
            "constraints": constraint_set_doc(cs),
        }

    # -- persistence / replay -------------------------------------------------

    def _path(self, session_id: str) -> Path:
        assert self.data_dir is not None
        return self.data_dir / f"{session_id}.jsonl"

    def _persist(self, sess: Session, event: dict) -> None:
        if self.data_dir is None:
            return
        with self._path(sess.id).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event) + "\n")

    def load_session(self, session_id: str) -> Session:
        """Rebuild a persisted session by replaying its document."""
        if self.data_dir is None:
            raise UnknownResource("store has no data directory")
        path = self._path(session_id)
        if not path.exists():
            raise UnknownResource(f"no persisted session '{session_id}'")
        with path.open(encoding="utf-8") as fh:
            events = [json.loads(line) for line in fh if line.strip()]
        sess = self._replay_events(events)
        self._sessions[sess.id] = sess
        return sess

    def replay(self, session_id: str) -> Session:
        """Re-execute a live session's audit log into a fresh, unregistered
        session; used to verify end-to-end determinism."""
        sess = self.get(session_id)
        events = [
            {"kind": "init", "at": sess.created_at, "sessionId": sess.id, "source": sess.source_text}
        ] + list(sess.audit)
        return self._replay_events(events)

    def _replay_events(self, events: list[dict]) -> Session:
        if not events or events[0].get("kind") != "init":
            raise ValueError("session document must start with an init record")
        init = events[0]
        sess = self._build_session(init["sessionId"], init["source"], init["at"])
        for ev in events[1:]:
            if ev["kind"] == "drag":
                self._apply_drag(
                    sess,
                    ev["entityId"],
                    ev["toRank"],
                    ev.get("baseScheme"),
                    persist=False,
                    at=ev["at"],
                    expected_base=ev.get("baseRanking"),
                )
            elif ev["kind"] == "save":
                self._apply_save(sess, ev["which"], ev.get("label"), persist=False, at=ev["at"])
            else:
                raise ValueError(f"unknown audit record kind '{ev.get('kind')}'")
        return sess


# -- JSON-shaped documents ----------------------------------------------------


def _weight_map(wv: WeightVector, names: tuple[str, ...]) -> dict[str, float]:
    return {name: w for name, w in zip(names, wv.w)}


def scheme_doc(scheme: WeightScheme, names: tuple[str, ...]) -> dict:
    doc: dict = {"id": scheme.id, "kind": scheme.kind, "label": scheme.label}
    if scheme.kind == "type":
        assert isinstance(scheme.weights, Mapping)
        doc["weightsByType"] = {
            t: _weight_map(wv, names) for t, wv in scheme.weights.items()
        }
        doc["training"] = {
            t: {"objective": wv.objective, "iterations": wv.iterations}
            for t, wv in scheme.weights.items()
        }
    else:
        assert isinstance(scheme.weights, WeightVector)
        doc["weights"] = _weight_map(scheme.weights, names)
        doc["training"] = {
            "objective": scheme.weights.objective,
            "iterations": scheme.weights.iterations,
        }
    if scheme.created_from is not None:
        d = scheme.created_from
        doc["createdFrom"] = {
            "entityId": d.entity_id,
            "fromRank": d.from_rank,
            "toRank": d.to_rank,
        }
    else:
        doc["createdFrom"] = None
    return doc


def ranking_doc(sess: Session, result: RankingResult, scheme: WeightScheme | None = None) -> dict:
    """Ranking rows enriched with entity names, types, and raw values."""
    ds = sess.dataset
    names = ds.schema.names
    if scheme is None:
        scheme = sess.scheme(result.scheme_id)
    rows = []
    for e in result.entities:
        ent = ds.entity(e.entity_id)
        rows.append(
            {
                "id": e.entity_id,
                "name": ent.name,
                "type": ent.type_label,
                "rank": e.rank,
                "score": e.score,
                "rounded": result.segmentation.rounded_scores[e.entity_id],
                "rating": e.rating,
                "contributions": {n: c for n, c in zip(names, e.contributions)},
                "raw": {n: v for n, v in zip(names, ent.raw)},
            }
        )
    return {
        "sessionId": sess.id,
        "schemeId": result.scheme_id,
        "label": scheme.label,
        "kind": scheme.kind,
        "breakpoints": list(result.segmentation.breakpoints),
        "entities": rows,
        "warnings": list(result.warnings),
    }


def session_summary(sess: Session) -> dict:
    return {
        "sessionId": sess.id,
        "createdAt": sess.created_at,
        "entityCount": sess.dataset.size,
        "typeField": sess.dataset.schema.type_field,
        "typeLabels": list(sess.dataset.type_labels()),
        "indicators": [
            {"name": n, "unit": u} for n, u in sess.dataset.schema.indicators
        ],
        "schemes": [scheme_doc(s, sess.dataset.schema.names) for s in sess.schemes],
    }


def preview_doc(sess: Session, preview: DragPreview) -> dict:
    candidates = {}
    for which, slot in preview.candidates.items():
        if slot is None:
            candidates[which] = None
            continue
        candidates[which] = {
            "scheme": scheme_doc(slot.scheme, sess.dataset.schema.names),
            "ranking": ranking_doc(sess, slot.result, scheme=slot.scheme),
            "notes": list(slot.notes),
        }
    d = preview.drag
    return {
        "drag": {
            "entityId": d.entity_id,
            "fromRank": d.from_rank,
            "toRank": d.to_rank,
            "baseRanking": list(d.base_ranking),
        },
        "baseScheme": preview.base_scheme_id,
        "candidates": candidates,
        "errors": dict(preview.errors),
    }
