"""Headless interaction scripts: scripted drags and saves over one dataset.

A script is a JSON document:

    {
      "datasetPath": "banks.csv",
      "outputDir": "out",
      "steps": [
        {"drag": {"entityId": "Bank A", "toRank": 13}},
        {"save": {"which": "type", "label": "Analyst pass 1"}}
      ]
    }

A step may carry "drag", "save", or both (drag applied first); every save
consumes the preview of the immediately preceding drag. Outputs are one
ranking CSV per scheme, a comparison document, projection point files, and
a Kendall-tau matrix between all schemes.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .metrics import tau_matrix
from .projection import ProjectionParams
from .session import SessionStore, ranking_doc
from .trainer import TrainerConfig

__all__ = ["ScriptError", "ScriptStep", "InteractionScript", "load_script", "run_script"]


class ScriptError(ValueError):
    """A script that failed validation or aborted mid-run."""


@dataclass(frozen=True)
class ScriptStep:
    drag: tuple[str, int] | None = None  # (entity id, target rank)
    save: tuple[str, str | None] | None = None  # (scheme kind, label)

    def __post_init__(self) -> None:
        if self.drag is None and self.save is None:
            raise ScriptError("step must contain a drag or a save")


@dataclass(frozen=True)
class InteractionScript:
    dataset_path: str
    steps: tuple[ScriptStep, ...]
    output_dir: str


def load_script(path: str | Path) -> InteractionScript:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    for key in ("datasetPath", "steps", "outputDir"):
        if key not in doc:
            raise ScriptError(f"script is missing '{key}'")
    steps = []
    for i, raw in enumerate(doc["steps"], 1):
        drag = save = None
        if "drag" in raw:
            d = raw["drag"]
            if "entityId" not in d or "toRank" not in d:
                raise ScriptError(f"step {i}: drag needs entityId and toRank")
            drag = (str(d["entityId"]), int(d["toRank"]))
        if "save" in raw:
            s = raw["save"]
            if "which" not in s:
                raise ScriptError(f"step {i}: save needs which")
            save = (str(s["which"]), s.get("label"))
        if drag is None and save is None:
            raise ScriptError(f"step {i}: expected drag and/or save")
        steps.append(ScriptStep(drag=drag, save=save))
    return InteractionScript(
        dataset_path=str(doc["datasetPath"]),
        steps=tuple(steps),
        output_dir=str(doc["outputDir"]),
    )


def _write_ranking_csv(path: Path, doc: dict) -> None:
    indicator_names = list(doc["entities"][0]["contributions"]) if doc["entities"] else []
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["rank", "id", "name", "type", "score", "rounded", "rating"]
            + [f"contribution_{n}" for n in indicator_names]
        )
        for row in doc["entities"]:
            writer.writerow(
                [row["rank"], row["id"], row["name"], row["type"],
                 repr(row["score"]), row["rounded"], row["rating"]]
                + [repr(row["contributions"][n]) for n in indicator_names]
            )


def run_script(
    script: InteractionScript,
    trainer_config: TrainerConfig = TrainerConfig(),
    projection_params: ProjectionParams = ProjectionParams(),
) -> dict:
    """Execute the script and write report files; returns a manifest."""
    dataset_path = Path(script.dataset_path)
    if not dataset_path.exists():
        raise ScriptError(f"dataset not found: {dataset_path}")
    out = Path(script.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    store = SessionStore(
        data_dir=None, trainer_config=trainer_config, projection_params=projection_params
    )
    sess = store.create_session(dataset_path.read_text(encoding="utf-8"))
    for i, step in enumerate(script.steps, 1):
        try:
            if step.drag is not None:
                store.submit_drag(sess.id, step.drag[0], step.drag[1])
            if step.save is not None:
                store.save_scheme(sess.id, step.save[0], step.save[1])
        except ValueError as exc:
            raise ScriptError(f"step {i}: {exc}") from exc

    written: list[str] = []
    orderings = {}
    for scheme in sess.schemes:
        result = sess.results[scheme.id]
        doc = ranking_doc(sess, result)
        path = out / f"ranking_{scheme.id}.csv"
        _write_ranking_csv(path, doc)
        written.append(path.name)
        orderings[scheme.id] = list(result.ranked_ids())

    if len(sess.schemes) > 1:
        path = out / "comparison.json"
        path.write_text(json.dumps(store.comparison(sess.id), indent=2), encoding="utf-8")
        written.append(path.name)

    for scheme in sess.schemes:
        proj = store.projection(sess.id, scheme.id)
        path = out / f"projection_{scheme.id}.json"
        path.write_text(json.dumps(proj.to_doc(), indent=2), encoding="utf-8")
        written.append(path.name)

    path = out / "tau_matrix.json"
    path.write_text(json.dumps(tau_matrix(orderings), indent=2), encoding="utf-8")
    written.append(path.name)

    return {"sessionId": sess.id, "outputDir": str(out), "files": written}
