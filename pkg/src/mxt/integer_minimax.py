"""Linear-time minimax trees for integer weights.

Pipeline: raise every weight below ``max - n + 1`` to that threshold (this
never changes the minimax cost), counting-sort the clamped weights over their
length-``n`` window (radix passes over 16-bit digits for large ``n``), run
Golumbic's merge over the sorted list with a single forward pointer, then put
the original weights back on the leaves.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    INT64_MAX,
    INT64_MIN,
    NO_NODE,
    EmptyInputError,
    MinimaxError,
    MinimaxTree,
    WeightOverflowError,
    as_int_weights,
    as_real_weights,
    recompute_weights,
)


@dataclass(frozen=True)
class ClampedMultiset:
    clamped: tuple
    original: tuple
    replaced_indices: tuple
    threshold: int


@dataclass
class MergeStats:
    """Work counters filled in by :func:`build_minimax_sorted`."""

    nodes: int = 0
    pointer_advances: int = 0


def clamp_weights(weights: Sequence[int]) -> ClampedMultiset:
    ws = as_int_weights(weights)
    n = len(ws)
    threshold = max(ws) - n + 1
    clamped = tuple(w if w > threshold else threshold for w in ws)
    replaced = tuple(i for i, w in enumerate(ws) if w < threshold)
    return ClampedMultiset(clamped, tuple(ws), replaced, threshold)


def _counting_order(values: Sequence[int], lo: int, span: int) -> list[int]:
    """Stable order of positions sorting ``values``, all in ``[lo, lo + span)``."""
    counts = [0] * (span + 1)
    for v in values:
        counts[v - lo + 1] += 1
    total = 0
    for i in range(span + 1):
        total += counts[i]
        counts[i] = total
    order = [0] * len(values)
    for i, v in enumerate(values):
        slot = v - lo
        order[counts[slot]] = i
        counts[slot] += 1
    return order


# Above this size the digit-wise numpy path wins; both are stable and linear.
_RADIX_MIN = 2048


def _radix_order(keys: np.ndarray) -> np.ndarray:
    """Stable order of nonnegative integer ``keys``: LSD passes over 16-bit digits.

    Each pass is a stable argsort of ``uint16`` digits, which numpy performs
    as a counting/radix sort, so keys below ``2**32`` take two linear passes.
    """
    order = np.arange(keys.size)
    shift = 0
    top = int(keys.max()) if keys.size else 0
    while True:
        digits = ((keys[order] >> shift) & 0xFFFF).astype(np.uint16)
        order = order[np.argsort(digits, kind="stable")]
        shift += 16
        if top >> shift == 0:
            return order


def sort_clamped(c: ClampedMultiset) -> list[int]:
    n = len(c.clamped)
    if n < _RADIX_MIN:
        order = _counting_order(c.clamped, c.threshold, n)
        return [c.clamped[i] for i in order]
    arr = np.asarray(c.clamped, dtype=np.int64)
    return arr[_radix_order(arr - c.threshold)].tolist()


def build_minimax_sorted(
    sorted_weights: Sequence[int],
    leaf_indices: Optional[Sequence[int]] = None,
    stats: Optional[MergeStats] = None,
) -> MinimaxTree:
    """Golumbic's merge over weights that are already in nondecreasing order.

    The working list is kept sorted. Each step merges the first two nodes into
    one of weight ``max + 1`` and splices it in right after the last node whose
    weight is at most that value; merged weights never decrease, so the splice
    pointer only moves forward and the whole run is linear.

    Arena node ``i < n`` is the leaf for ``sorted_weights[i]``; its
    ``leaf_index`` is ``leaf_indices[i]`` (default ``i``).
    """
    n = len(sorted_weights)
    if n == 0:
        raise EmptyInputError("weight multiset is empty")
    for i in range(1, n):
        if sorted_weights[i - 1] > sorted_weights[i]:
            raise MinimaxError(f"weights not sorted at position {i}")
    size = 2 * n - 1
    w = list(sorted_weights) + [0] * (n - 1)
    left = [NO_NODE] * size
    right = [NO_NODE] * size
    nxt = list(range(1, n)) + [NO_NODE] * n

    head = 0
    p = 0
    advances = 0
    for new in range(n, size):
        a = head
        b = nxt[a]
        wa = w[a]
        wb = w[b]
        t = (wa if wa >= wb else wb) + 1
        q = nxt[p]
        while q != NO_NODE and w[q] <= t:
            p = q
            q = nxt[q]
            advances += 1
        w[new] = t
        left[new] = a
        right[new] = b
        if p == b:
            # b was the splice point; the new node becomes the head
            nxt[new] = q
            head = new
            p = new
        else:
            head = nxt[b]
            nxt[new] = q
            nxt[p] = new
    if stats is not None:
        stats.nodes += size
        stats.pointer_advances += advances

    if leaf_indices is None:
        leaf_index = list(range(n))
    else:
        leaf_index = list(leaf_indices)
    leaf_index += [NO_NODE] * (n - 1)
    return MinimaxTree(tuple(w), tuple(left), tuple(right), tuple(leaf_index), size - 1)


def build_minimax_heap(weights: Sequence) -> MinimaxTree:
    """Reference O(n log n) Golumbic algorithm with a binary heap."""
    if all(isinstance(w, int) and not isinstance(w, bool) for w in weights):
        ws: list = as_int_weights(weights)
    else:
        ws = as_real_weights(weights)
    n = len(ws)
    size = 2 * n - 1
    w = ws + [0] * (n - 1)
    left = [NO_NODE] * size
    right = [NO_NODE] * size
    heap = [(x, i) for i, x in enumerate(ws)]
    heapq.heapify(heap)
    for new in range(n, size):
        wa, a = heapq.heappop(heap)
        wb, b = heapq.heappop(heap)
        w[new] = max(wa, wb) + 1
        left[new] = a
        right[new] = b
        heapq.heappush(heap, (w[new], new))
    leaf_index = list(range(n)) + [NO_NODE] * (n - 1)
    return MinimaxTree(tuple(w), tuple(left), tuple(right), tuple(leaf_index), size - 1)


def _check_range(ws: list[int]) -> None:
    n = len(ws)
    lo, hi = min(ws), max(ws)
    # internal weights reach at most max + n - 1
    if lo < INT64_MIN or hi + n - 1 > INT64_MAX:
        raise WeightOverflowError(
            f"weights must lie in [{INT64_MIN}, {INT64_MAX - n + 1}] for n={n}"
        )


def build_minimax_int(
    weights: Sequence[int], stats: Optional[MergeStats] = None
) -> MinimaxTree:
    ws = as_int_weights(weights)
    _check_range(ws)
    n = len(ws)
    if n < _RADIX_MIN:
        c = clamp_weights(ws)
        order = _counting_order(c.clamped, c.threshold, n)
        clamped = c.clamped
        sorted_w = [clamped[i] for i in order]
        leaf_w = [ws[i] for i in order]
    else:
        arr = np.asarray(ws, dtype=np.int64)
        threshold = int(arr.max()) - n + 1
        clamped_arr = np.maximum(arr, threshold)
        perm = _radix_order(clamped_arr - threshold)
        sorted_w = clamped_arr[perm].tolist()
        leaf_w = arr[perm].tolist()
        order = perm.tolist()
    shape = build_minimax_sorted(sorted_w, order, stats)
    # Every clamped leaf keeps its own input position, so the relabel is a
    # per-leaf lookup; unclamped leaves are unchanged by it.
    leaf_w += [0] * (n - 1)
    weights_out = recompute_weights(shape.left, shape.right, leaf_w, range(n, 2 * n - 1))
    return MinimaxTree(tuple(weights_out), shape.left, shape.right, shape.leaf_index, shape.root)
