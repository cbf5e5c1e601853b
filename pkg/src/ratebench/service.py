"""HTTP/JSON API over the session store.

Endpoints:
    POST /sessions                      upload a dataset (raw text or multipart)
    GET  /sessions/{id}                 session summary
    GET  /sessions/{id}/rankings?scheme=
    POST /sessions/{id}/drags           {"entityId", "toRank", "baseScheme"?}
    POST /sessions/{id}/schemes         {"which", "label"?}
    GET  /sessions/{id}/comparison
    GET  /sessions/{id}/projection?scheme=
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .data import IngestError
from .projection import ProjectionParams
from .session import (
    ConflictError,
    SessionStore,
    UnknownResource,
    preview_doc,
    ranking_doc,
    scheme_doc,
    session_summary,
)
from .trainer import TrainerConfig

__all__ = ["ServiceConfig", "load_config", "create_app"]


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8787
    data_dir: str | None = "./sessions"
    static_dir: str | None = None
    trainer: TrainerConfig = field(default_factory=TrainerConfig)
    projection: ProjectionParams = field(default_factory=ProjectionParams)


def load_config(path: str | Path) -> ServiceConfig:
    """Parse a key=value config file; '#' starts a comment.

    Recognized keys: host, port, data_dir, static_dir, trainer.c,
    trainer.tol, trainer.max_iter, trainer.seed, projection.perplexity,
    projection.iterations, projection.seed.
    """
    values: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {line_no}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()

    def take(key: str, default, cast):
        return cast(values.pop(key)) if key in values else default

    cfg = ServiceConfig(
        host=take("host", "127.0.0.1", str),
        port=take("port", 8787, int),
        data_dir=take("data_dir", "./sessions", lambda v: v or None),
        static_dir=take("static_dir", None, lambda v: v or None),
        trainer=TrainerConfig(
            c=take("trainer.c", 1.0, float),
            tol=take("trainer.tol", 1e-6, float),
            max_iter=take("trainer.max_iter", 10000, int),
            seed=take("trainer.seed", 0, int),
        ),
        projection=ProjectionParams(
            perplexity=take("projection.perplexity", 10.0, float),
            iterations=take("projection.iterations", 500, int),
            seed=take("projection.seed", 42, int),
        ),
    )
    if values:
        raise ValueError(f"unknown config keys: {', '.join(sorted(values))}")
    return cfg


class DragRequest(BaseModel):
    entityId: str
    toRank: int
    baseScheme: str | None = None


class SaveRequest(BaseModel):
    which: str
    label: str | None = None


def create_app(store: SessionStore, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="ratebench", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(UnknownResource)
    async def _unknown(request: Request, exc: UnknownResource):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(ConflictError)
    async def _conflict(request: Request, exc: ConflictError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(IngestError)
    async def _ingest_error(request: Request, exc: IngestError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _bad_request(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = form.get("file")
            if upload is None:
                raise ValueError("multipart upload requires a 'file' field")
            text = (await upload.read()).decode("utf-8")
        else:
            text = (await request.body()).decode("utf-8")
        sess = store.create_session(text)
        return {
            "sessionId": sess.id,
            "session": session_summary(sess),
            "ranking": ranking_doc(sess, store.results_for(sess, "default")),
        }

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return session_summary(store.get(session_id))

    @app.get("/sessions/{session_id}/rankings")
    def get_rankings(session_id: str, scheme: str | None = None):
        sess = store.get(session_id)
        result = store.rankings(session_id, scheme)
        return ranking_doc(sess, result)

    @app.post("/sessions/{session_id}/drags")
    def submit_drag(session_id: str, body: DragRequest):
        preview = store.submit_drag(
            session_id, body.entityId, body.toRank, body.baseScheme
        )
        return preview_doc(store.get(session_id), preview)

    @app.post("/sessions/{session_id}/schemes", status_code=201)
    def save_scheme(session_id: str, body: SaveRequest):
        scheme = store.save_scheme(session_id, body.which, body.label)
        sess = store.get(session_id)
        return {
            "scheme": scheme_doc(scheme, sess.dataset.schema.names),
            "ranking": ranking_doc(sess, store.results_for(sess, scheme.id)),
            "session": session_summary(sess),
        }

    @app.get("/sessions/{session_id}/comparison")
    def get_comparison(session_id: str):
        return store.comparison(session_id)

    @app.get("/sessions/{session_id}/projection")
    def get_projection(session_id: str, scheme: str = "default"):
        return store.projection(session_id, scheme).to_doc()

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")
    return app
