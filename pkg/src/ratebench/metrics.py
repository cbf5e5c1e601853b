"""Rank agreement metrics for comparing weight schemes."""

from __future__ import annotations

from typing import Mapping, Sequence

__all__ = ["kendall_tau", "tau_matrix"]


def kendall_tau(ranking_a: Sequence[str], ranking_b: Sequence[str]) -> float:
    """Kendall tau-a between two orderings of the same entity set.

    Returns (concordant - discordant) / C(n, 2); 1.0 for identical
    orderings, -1.0 for a full reversal.
    """
    if len(ranking_a) != len(set(ranking_a)) or len(ranking_b) != len(set(ranking_b)):
        raise ValueError("rankings must not contain duplicates")
    if set(ranking_a) != set(ranking_b):
        raise ValueError("rankings cover different entity sets")
    n = len(ranking_a)
    if n < 2:
        raise ValueError("kendall tau requires at least 2 entities")
    pos_b = {eid: i for i, eid in enumerate(ranking_b)}
    seq = [pos_b[eid] for eid in ranking_a]
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] < seq[j]:
                concordant += 1
            else:
                discordant += 1
    return (concordant - discordant) / (n * (n - 1) / 2)


def tau_matrix(rankings: Mapping[str, Sequence[str]]) -> dict:
    """Pairwise tau between named rankings, as a JSON-shaped document."""
    names = list(rankings)
    values = [
        [kendall_tau(rankings[a], rankings[b]) for b in names] for a in names
    ]
    return {"schemes": names, "tau": values}
