"""Brute-force references for the tree builders. Exponential; small inputs only."""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .core import MinimaxError


@lru_cache(maxsize=None)
def full_tree_profiles(n: int) -> frozenset:
    """Sorted leaf-depth tuples of every strictly binary tree with ``n`` leaves."""
    if n == 1:
        return frozenset({(0,)})
    out = set()
    for a in range(1, n // 2 + 1):
        for left in full_tree_profiles(a):
            for right in full_tree_profiles(n - a):
                out.add(tuple(sorted(d + 1 for d in left + right)))
    return frozenset(out)


def oracle_minimax_cost(weights: Sequence, max_n: int = 10):
    """Minimum over all strictly binary trees of ``max(w_i + depth_i)``.

    Depths and weights are paired in opposite orders (heaviest weight on the
    shallowest leaf); swapping any inverted pair never raises the maximum.
    """
    n = len(weights)
    if n == 0:
        raise MinimaxError("weight multiset is empty")
    if n > max_n:
        raise MinimaxError(f"oracle limited to n <= {max_n}, got {n}")
    desc = sorted(weights, reverse=True)
    return min(
        max(w + d for w, d in zip(desc, profile))
        for profile in full_tree_profiles(n)
    )


def kraft_numerator(lengths: Sequence[int], scale: int) -> int:
    """``sum(2**-l) * 2**scale`` as an exact integer."""
    return sum(1 << (scale - k) for k in lengths)


def oracle_threshold(decomposition) -> float:
    """Largest ``x`` in ``frac ∪ {0}`` passing the floor/ceiling Kraft test, by direct evaluation."""
    floors = decomposition.floor_part.tolist()
    ceils = decomposition.ceil_part.tolist()
    fracs = decomposition.frac.tolist()
    scale = max(ceils, default=0)
    one = 1 << scale
    best = 0.0
    for x in sorted(set(fracs) | {0.0}):
        total = 0
        for f, c, xj in zip(floors, ceils, fracs):
            total += 1 << (scale - (f if xj <= x else c))
        if total <= one:
            best = x
    return best


def oracle_optimal_lengths(q: Sequence[float], max_len: Optional[int] = None) -> list[int]:
    """Length assignment minimizing ``max(log2 q_i + len_i)`` by exhaustive search."""
    n = len(q)
    if n > 6:
        raise MinimaxError(f"oracle limited to n <= 6, got {n}")
    if n == 1:
        return [0]
    if max_len is None:
        max_len = n - 1
    by_prob = sorted(range(n), key=lambda i: -q[i])
    logs = [math.log2(q[i]) for i in by_prob]
    best_cost = math.inf
    best: list[int] = []
    one = 1 << max_len
    for combo in combinations_with_replacement(range(1, max_len + 1), n):
        if kraft_numerator(combo, max_len) > one:
            continue
        cost = max(lg + k for lg, k in zip(logs, combo))
        if cost < best_cost:
            best_cost = cost
            best = list(combo)
    out = [0] * n
    for rank, i in enumerate(by_prob):
        out[i] = best[rank]
    return out
