"""Independent reference implementations used to pin expected test values.

These are deliberately naive (lists, Counters, recomputation from scratch)
so they share no code with the library. Entropy sums use math.fsum, which
is exactly rounded and therefore order-independent; the library follows the
same scalar term convention, so mathematically equal qualities compare as
bit-equal floats and tie-breaking agrees on both sides.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter


def segment_entropy(values):
    """Empirical entropy of one segment, natural log."""
    n = len(values)
    counts = Counter(values)
    terms = []
    for v in sorted(counts):
        p = counts[v] / n
        terms.append(p * math.log(p))
    return -math.fsum(terms)


def split_segments(values, breakpoints):
    """Partition a multiset by 'x <= b' thresholds; empty parts dropped."""
    bounds = sorted(breakpoints)
    parts = [[] for _ in range(len(bounds) + 1)]
    for x in values:
        parts[sum(1 for b in bounds if x > b)].append(x)
    return [p for p in parts if p]


def weighted_entropy(values, breakpoints):
    """Size-weighted entropy of the partition induced by the breakpoints."""
    n = len(values)
    return math.fsum(
        len(seg) / n * segment_entropy(seg) for seg in split_segments(values, breakpoints)
    )


def replay_entropy_split(values, max_breaks=4):
    """Step-by-step replay of the greedy segmentation rule.

    At each step every unused candidate (distinct values except the maximum)
    is tried inside the current partition; the one minimizing the weighted
    entropy of the whole partition wins, ties going to the smaller value.
    """
    candidates = sorted(set(values))[:-1]
    chosen = []
    for _ in range(max_breaks):
        remaining = [u for u in candidates if u not in chosen]
        if not remaining:
            break
        best = min(
            remaining, key=lambda u: (weighted_entropy(values, chosen + [u]), u)
        )
        chosen.append(best)
    return chosen


def exhaustive_best_breakpoints(values, max_breaks=4):
    """Globally optimal breakpoint subset by final weighted entropy.

    Tie-break: lexicographically smallest sorted tuple. Only feasible for
    small candidate counts; used to cross-check the greedy rule where the
    two agree.
    """
    candidates = sorted(set(values))[:-1]
    k = min(max_breaks, len(candidates))
    best = None
    best_q = None
    for combo in itertools.combinations(candidates, k):
        q = weighted_entropy(values, list(combo))
        if best_q is None or q < best_q or (q == best_q and combo < best):
            best_q = q
            best = combo
    return list(best) if best else []


def brute_force_kendall_tau(order_a, order_b):
    """Tau-a by direct enumeration of all entity pairs."""
    pos_a = {e: i for i, e in enumerate(order_a)}
    pos_b = {e: i for i, e in enumerate(order_b)}
    assert set(pos_a) == set(pos_b)
    ids = sorted(pos_a)
    conc = disc = 0
    for i, j in itertools.combinations(ids, 2):
        sa = pos_a[i] - pos_a[j]
        sb = pos_b[i] - pos_b[j]
        if sa * sb > 0:
            conc += 1
        elif sa * sb < 0:
            disc += 1
    n = len(ids)
    return (conc - disc) / (n * (n - 1) / 2)
