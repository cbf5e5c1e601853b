"""2D neighbor-preserving embeddings of weight-multiplied indicator rows.

Each entity is embedded from the vector of its per-indicator contributions
(weight times normalized value, per-type weights applied where the scheme
has them), so the projection reflects the same quantities the ranking table
shows. The embedding is t-SNE with a deterministic principal-component
initialization; identical inputs and parameters reproduce identical
coordinates.

The overall magnitude of a weight vector carries no information (ranking is
scale-free), so the weighted matrix is normalized to a canonical
power-of-two scale before embedding. Rescaling every weight by a power of
two therefore reproduces coordinates bit-for-bit; other positive factors
are equivalent up to solver precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.manifold import TSNE

from .data import Dataset, NormalizedMatrix
from .scoring import WeightScheme, per_entity_weights

__all__ = ["ProjectionError", "ProjectionParams", "ProjectionResult", "project", "effective_params"]

_MIN_ENTITIES = 4
_SOLVER_MIN_ITER = 250


class ProjectionError(ValueError):
    """Raised when the requested embedding is not computable as asked."""

    def __init__(self, message: str, suggested_perplexity: float | None = None):
        super().__init__(message)
        self.suggested_perplexity = suggested_perplexity


@dataclass(frozen=True)
class ProjectionParams:
    perplexity: float = 10.0
    iterations: int = 500
    seed: int = 42

    def __post_init__(self) -> None:
        if self.perplexity <= 0:
            raise ValueError("perplexity must be positive")
        if self.iterations < _SOLVER_MIN_ITER:
            raise ValueError(f"iterations must be at least {_SOLVER_MIN_ITER}")


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """One (x, y) point per entity, centered at the origin."""

    scheme_id: str
    entity_order: tuple[str, ...]
    coords: np.ndarray
    params: ProjectionParams

    def __post_init__(self) -> None:
        self.coords.setflags(write=False)

    def point(self, entity_id: str) -> tuple[float, float]:
        i = self.entity_order.index(entity_id)
        return float(self.coords[i, 0]), float(self.coords[i, 1])

    def to_doc(self) -> dict:
        return {
            "schemeId": self.scheme_id,
            "params": {
                "perplexity": self.params.perplexity,
                "iterations": self.params.iterations,
                "seed": self.params.seed,
            },
            "points": [
                {"id": eid, "x": float(x), "y": float(y)}
                for eid, (x, y) in zip(self.entity_order, self.coords)
            ],
        }


def suggested_perplexity(n: int) -> int:
    """Largest integer perplexity satisfying the perplexity < n/3 guard."""
    return max(1, (n - 1) // 3)


def effective_params(n: int, params: ProjectionParams) -> ProjectionParams:
    """Clamp the perplexity so the embedding is computable for n entities.

    Service-level convenience; ``project`` itself enforces the strict guard.
    """
    cap = suggested_perplexity(n)
    if params.perplexity < n / 3:
        return params
    return ProjectionParams(
        perplexity=float(cap), iterations=params.iterations, seed=params.seed
    )


def project(
    nm: NormalizedMatrix,
    ds: Dataset,
    scheme: WeightScheme,
    params: ProjectionParams = ProjectionParams(),
) -> ProjectionResult:
    """Embed the weighted rows in 2D, preserving local neighborhoods."""
    n = ds.size
    if n < _MIN_ENTITIES:
        raise ProjectionError(f"projection requires at least {_MIN_ENTITIES} entities")
    if not params.perplexity < n / 3:
        cap = suggested_perplexity(n)
        raise ProjectionError(
            f"perplexity {params.perplexity} too large for {n} entities; "
            f"use a value below {n / 3:.2f} (suggested: {cap})",
            suggested_perplexity=float(cap),
        )
    if nm.entity_order != ds.ids:
        raise ValueError("normalized matrix is not aligned with the dataset")

    w_rows, _ = per_entity_weights(ds, scheme)
    weighted = w_rows * nm.values
    peak = float(np.abs(weighted).max())
    if peak > 0.0:
        # dividing by a power of two is exact, so any 2**k rescaling of the
        # weights cancels out entirely
        weighted = weighted / 2.0 ** math.ceil(math.log2(peak))
    embedding = TSNE(
        n_components=2,
        perplexity=params.perplexity,
        max_iter=params.iterations,
        init="pca",
        random_state=params.seed,
        method="exact",
    ).fit_transform(weighted)
    coords = np.asarray(embedding, dtype=float)
    coords = coords - coords.mean(axis=0)
    return ProjectionResult(
        scheme_id=scheme.id,
        entity_order=ds.ids,
        coords=coords,
        params=params,
    )
