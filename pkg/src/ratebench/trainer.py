"""Soft-margin linear ranker trained on labeled difference vectors.

Minimizes  0.5*||w||^2 + C * sum_t max(0, 1 - y_t * <w, x_t>)  with no bias
term: difference vectors are symmetric about the origin, so the separating
hyperplane must pass through it. The optimizer is a deterministic dual
coordinate descent (cyclic sweep order, no randomness), which converges to
the unique primal minimizer; the reported trace is the best primal objective
seen after each sweep and is non-increasing by construction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .constraints import ConstraintSet, TrainingPair

__all__ = ["TrainerConfig", "WeightVector", "PerTypeWeights", "train", "train_per_type"]

log = logging.getLogger(__name__)

_PG_EPS = 1e-14  # projected-gradient threshold below which a coordinate is left alone


@dataclass(frozen=True)
class TrainerConfig:
    """Soft-margin penalty, stopping tolerance, sweep cap, and seed.

    The seed is reserved for solver variants that shuffle; the default
    cyclic solver ignores it, so results are identical for any seed.
    """

    c: float = 1.0
    tol: float = 1e-6
    max_iter: int = 10000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise ValueError("C must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class WeightVector:
    """Learned indicator weights plus solver diagnostics."""

    w: tuple[float, ...]
    objective: float
    iterations: int
    trace: tuple[float, ...] = ()

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.w)


def _objective(w: np.ndarray, x: np.ndarray, y: np.ndarray, c: float) -> float:
    margins = 1.0 - y * (x @ w)
    return float(0.5 * (w @ w) + c * np.maximum(margins, 0.0).sum())


def train(pairs: Sequence[TrainingPair], cfg: TrainerConfig = TrainerConfig()) -> WeightVector:
    """Fit the hinge-loss ranker to a set of difference-vector pairs.

    Deterministic: the same pairs and config produce bit-identical weights.
    Raises ValueError on an empty pair list or when every difference vector
    is zero (nothing to separate).
    """
    if not pairs:
        raise ValueError("no constraints")
    x = np.asarray([p.diff for p in pairs], dtype=float)
    y = np.asarray([float(p.label) for p in pairs])
    sqnorm = np.einsum("ij,ij->i", x, x)
    active = np.flatnonzero(sqnorm > 0.0)
    if active.size == 0:
        raise ValueError("degenerate constraints")

    c = cfg.c
    n, m = x.shape
    w = np.zeros(m)
    alpha = np.zeros(n)

    prev_obj = _objective(w, x, y, c)
    best_obj = prev_obj
    best_w = w.copy()
    trace = [best_obj]
    sweeps = 0
    for sweeps in range(1, cfg.max_iter + 1):
        for t in active:
            g = y[t] * (x[t] @ w) - 1.0
            if alpha[t] <= 0.0:
                pg = min(g, 0.0)
            elif alpha[t] >= c:
                pg = max(g, 0.0)
            else:
                pg = g
            if abs(pg) <= _PG_EPS:
                continue
            a_new = min(max(alpha[t] - g / sqnorm[t], 0.0), c)
            if a_new != alpha[t]:
                w += (a_new - alpha[t]) * y[t] * x[t]
                alpha[t] = a_new
        obj = _objective(w, x, y, c)
        if obj < best_obj:
            best_obj = obj
            best_w = w.copy()
        trace.append(best_obj)
        if abs(prev_obj - obj) <= cfg.tol * max(1.0, abs(prev_obj)):
            break
        prev_obj = obj

    assert all(b <= a for a, b in zip(trace, trace[1:])), "objective trace regressed"
    return WeightVector(
        w=tuple(float(v) for v in best_w),
        objective=best_obj,
        iterations=sweeps,
        trace=tuple(trace),
    )


@dataclass(frozen=True)
class PerTypeWeights:
    """One weight vector per trainable type label, plus per-type failures."""

    weights: Mapping[str, WeightVector]
    failed: Mapping[str, str]


def train_per_type(
    cs: ConstraintSet, cfg: TrainerConfig = TrainerConfig()
) -> PerTypeWeights:
    """Train one ranker per type label of a type-scheme constraint set.

    Types are fitted independently in sorted label order; a type whose
    training fails is reported in ``failed`` and omitted from the weights
    without aborting the remaining types.
    """
    if cs.scheme != "type":
        raise ValueError(f"expected a type constraint set, got '{cs.scheme}'")
    weights: dict[str, WeightVector] = {}
    failed: dict[str, str] = {}
    for label in sorted(cs.pairs_by_type):
        try:
            weights[label] = train(cs.pairs_by_type[label], cfg)
        except ValueError as exc:
            failed[label] = str(exc)
            log.warning("type '%s' not trainable: %s", label, exc)
    return PerTypeWeights(weights=weights, failed=failed)
