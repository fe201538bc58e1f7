"""Deterministic linear-time selection (median of medians, groups of five)."""

from __future__ import annotations

import numpy as np

# Below this size a direct sort is cheaper than another pivot round; the
# cutoff is a constant, so the overall bound stays linear.
_SMALL = 40


def select_kth(values: np.ndarray, k: int) -> float:
    """Return the ``k``-th smallest element (0-based) of a 1-d array.

    Worst-case linear: the pivot is the median of the group-of-five medians,
    which guarantees that each partition step discards a constant fraction.
    """
    a = np.asarray(values)
    if not 0 <= k < a.size:
        raise IndexError(f"k={k} out of range for {a.size} values")
    while True:
        if a.size <= _SMALL:
            return np.sort(a)[k].item()
        pivot = _pivot(a)
        below = a[a < pivot]
        if k < below.size:
            a = below
            continue
        n_equal = int(np.count_nonzero(a == pivot))
        if k < below.size + n_equal:
            return pivot
        k -= below.size + n_equal
        a = a[a > pivot]


def _pivot(a: np.ndarray) -> float:
    full = a.size - a.size % 5
    medians = np.sort(a[:full].reshape(-1, 5), axis=1)[:, 2]
    rest = a[full:]
    if rest.size:
        medians = np.append(medians, np.sort(rest)[(rest.size - 1) // 2])
    return select_kth(medians, (medians.size - 1) // 2)


def lower_median(values: np.ndarray) -> float:
    """The ``ceil(n/2)``-th smallest value, so both halves shrink to ``<= ceil(n/2)``."""
    a = np.asarray(values)
    return select_kth(a, (a.size - 1) // 2)
