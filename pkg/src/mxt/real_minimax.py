"""Linear-time minimax trees for real weights.

The weights are shifted so that they become base-2 log-probabilities. For
log-probability weights an optimal tree is one built on integer code lengths:
every symbol gets either the floor or the ceiling of ``|w_j|``, with floors
given to exactly the symbols whose fractional part is at most the largest
threshold keeping the Kraft sum at or below one. The threshold is found by
repeated median selection over the fractional parts, with the Kraft sums kept
exactly in two fixed-point accumulators, so every round costs time linear in
the surviving candidates plus one pass over the accumulator words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import MinimaxTree, as_real_weights, recompute_weights
from .integer_minimax import build_minimax_int
from .kraft import FixedPointFraction, fraction_pair_at_most_one
from .selection import lower_median

# stands in for |w| when a log-probability rounds to exactly 0 with n >= 2
_TINY = 5e-324


@dataclass(frozen=True)
class NormalizedWeights:
    shifted: np.ndarray
    shift_c: float
    original: tuple


@dataclass(frozen=True)
class FractionalDecomposition:
    floor_part: np.ndarray
    ceil_part: np.ndarray
    frac: np.ndarray

    def __len__(self) -> int:
        return len(self.frac)


@dataclass
class SelectionStats:
    rounds: int = 0
    sizes: list = field(default_factory=list)
    accepted: list = field(default_factory=list)


def normalize(weights: Sequence[float]) -> NormalizedWeights:
    """Shift the weights by ``c = -log2(sum(2**w))`` so that ``sum(2**(w + c)) == 1``."""
    ws = as_real_weights(weights)
    a = np.asarray(ws, dtype=np.float64)
    top = float(a.max())
    log_total = float(np.log2(np.sum(np.exp2(a - top))))
    # a - top <= 0 exactly and log_total >= 0, so every shifted weight is <= 0
    shifted = (a - top) - log_total
    return NormalizedWeights(shifted, -(top + log_total), tuple(ws))


def decompose(norm: NormalizedWeights, n: Optional[int] = None) -> FractionalDecomposition:
    """Floors, ceilings and fractional parts of ``|w_j|``, with ceilings capped at ``n - 1``."""
    if n is None:
        n = len(norm.shifted)
    mag = -np.asarray(norm.shifted, dtype=np.float64)
    if n >= 2:
        mag = np.where(mag == 0.0, _TINY, mag)
    fl = np.floor(mag)
    frac = mag - fl
    spill = frac >= 1.0
    if spill.any():
        fl = np.where(spill, fl + 1.0, fl)
        frac = np.where(spill, 0.0, frac)
    cap = max(n - 1, 0)
    over = fl + (frac > 0) > cap
    fl = np.where(over, float(cap), fl)
    frac = np.where(over, 0.0, frac)
    floor_part = fl.astype(np.int64)
    ceil_part = floor_part + (frac > 0)
    return FractionalDecomposition(floor_part, ceil_part, frac)


def _exact_s1(d: FractionalDecomposition, low: float) -> Fraction:
    total = Fraction(0)
    for c, x in zip(d.ceil_part.tolist(), d.frac.tolist()):
        total += Fraction(1, 1 << c)
        if 0 < x < low:
            total += Fraction(1, 1 << c)
    return total


def select_threshold(
    d: FractionalDecomposition,
    stats: Optional[SelectionStats] = None,
    debug: bool = False,
) -> tuple[float, list[int]]:
    """Largest ``x`` in ``frac ∪ {0}`` whose floor/ceiling length choice obeys Kraft.

    Returns the threshold and the resulting per-symbol lengths: the floor for
    fractional parts ``<= x``, the ceiling otherwise.

    ``s1`` holds the Kraft sum with every symbol at its ceiling plus, once
    more, the ceiling term of each symbol already known to take its floor
    (flooring a symbol with a nonzero fractional part doubles its term).
    Each round ``s2`` gets the extra terms for the candidates up to the
    median, and ``s1 + s2 <= 1`` decides which half survives.
    """
    ceil = d.ceil_part
    n = len(d)
    cap = max(1, int(ceil.max()) if n else 1)
    s1 = FixedPointFraction(cap)
    s2 = FixedPointFraction(cap)
    for k in ceil.tolist():
        if k:
            s1.add_pow2(k)
        else:
            s1.add_unit()

    xs = np.append(d.frac, 0.0)
    cs = np.append(ceil, 0)
    best = 0.0
    while xs.size:
        if stats is not None:
            stats.rounds += 1
            stats.sizes.append(int(xs.size))
        if debug:
            expect = _exact_s1(d, float(xs.min()))
            if s1.to_fraction() != expect or not s2.is_zero():
                raise AssertionError(f"accumulator invariant broken: {s1.to_fraction()} != {expect}")
        xm = lower_median(xs)
        upto = xs <= xm
        # zero fractional parts have floor == ceiling and add nothing
        for k in cs[upto & (xs > 0)].tolist():
            s2.add_pow2(k)
        accept = fraction_pair_at_most_one(s1, s2)
        if accept:
            s1.merge(s2)
            best = xm
            keep = ~upto
        else:
            keep = xs < xm
        if stats is not None:
            stats.accepted.append(accept)
        xs = xs[keep]
        cs = cs[keep]
        s2.reset()

    lengths = np.where(d.frac <= best, d.floor_part, ceil)
    return best, lengths.tolist()


def build_minimax_real(
    weights: Sequence[float], stats: Optional[SelectionStats] = None
) -> MinimaxTree:
    ws = as_real_weights(weights)
    n = len(ws)
    if n == 1:
        return MinimaxTree((ws[0],), (-1,), (-1,), (0,), 0)
    d = decompose(normalize(ws), n)
    _, lengths = select_threshold(d, stats)
    shape = build_minimax_int([-k for k in lengths])
    # leaves 0..n-1 of the integer tree carry their input position
    leaf_w = [ws[i] for i in shape.leaf_index[:n]] + [0.0] * (n - 1)
    w = recompute_weights(shape.left, shape.right, leaf_w, range(n, 2 * n - 1))
    return MinimaxTree(tuple(w), shape.left, shape.right, shape.leaf_index, shape.root)
