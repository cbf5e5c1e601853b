"""Command-line driver: serve the HTTP API, run scripts, check datasets.

Exit codes: 0 success, 1 validation error, 2 internal error.
"""

from __future__ import annotations

import sys
from dataclasses import replace

import click

from .data import IngestError, ingest as ingest_dataset
from .scripting import ScriptError, load_script, run_script
from .service import ServiceConfig, create_app, load_config
from .session import SessionStore

__all__ = ["cli", "main", "entry"]


def _apply_overrides(
    cfg: ServiceConfig,
    seed: int | None,
    c: float | None,
    perplexity: float | None,
) -> ServiceConfig:
    trainer = cfg.trainer
    proj = cfg.projection
    if seed is not None:
        trainer = replace(trainer, seed=seed)
        proj = replace(proj, seed=seed)
    if c is not None:
        trainer = replace(trainer, c=c)
    if perplexity is not None:
        proj = replace(proj, perplexity=perplexity)
    return replace(cfg, trainer=trainer, projection=proj)


def _shared_options(fn):
    fn = click.option("--seed", type=int, default=None, help="Override trainer and projection seeds.")(fn)
    fn = click.option("--c", "c_value", type=float, default=None, help="Override the soft-margin penalty C.")(fn)
    fn = click.option("--perplexity", type=float, default=None, help="Override the projection perplexity.")(fn)
    return fn


@click.group()
def cli() -> None:
    """Drag-to-rank weight elicitation and rating workbench."""


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@_shared_options
def serve(config_path, host, port, seed, c_value, perplexity) -> None:
    """Start the HTTP API."""
    import uvicorn

    cfg = load_config(config_path) if config_path else ServiceConfig()
    cfg = _apply_overrides(cfg, seed, c_value, perplexity)
    store = SessionStore(cfg.data_dir, cfg.trainer, cfg.projection)
    app = create_app(store, static_dir=cfg.static_dir)
    uvicorn.run(app, host=host or cfg.host, port=port or cfg.port)


@cli.command()
@click.option("--script", "script_path", required=True, type=click.Path(exists=True, dir_okay=False))
@_shared_options
def run(script_path, seed, c_value, perplexity) -> None:
    """Execute an interaction script and write its report files."""
    cfg = _apply_overrides(ServiceConfig(), seed, c_value, perplexity)
    script = load_script(script_path)
    manifest = run_script(script, trainer_config=cfg.trainer, projection_params=cfg.projection)
    click.echo(f"session {manifest['sessionId']} -> {manifest['outputDir']}")
    for name in manifest["files"]:
        click.echo(f"  {name}")


@cli.command(name="ingest")
@click.option("--check", "path", required=True, type=click.Path(exists=True, dir_okay=False))
def ingest_cmd(path) -> None:
    """Validate a dataset file and report its shape."""
    with open(path, encoding="utf-8") as fh:
        ds = ingest_dataset(fh)
    click.echo(
        f"ok: {ds.size} entities, {ds.schema.width} indicators, "
        f"{len(ds.type_labels())} type labels"
    )


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.exceptions.ClickException as exc:
        exc.show()
        return 1
    except (ScriptError, IngestError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except Exception as exc:  # anything else is an internal failure
        click.echo(f"internal error: {exc!r}", err=True)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
