"""Exact Kraft-sum bookkeeping.

:class:`FixedPointFraction` holds a binary fraction with a fixed number of
bits after the point, split into 64-bit blocks, plus a count of whole units
carried out of the first bit. Bit ``k`` (1-based) is worth ``2**-k``; block 0
holds bits 1..64 with bit 1 as its most significant bit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .core import NO_NODE, KraftError, MinimaxTree, recompute_weights

WORD_BITS = 64
WORD_MASK = (1 << WORD_BITS) - 1


class FixedPointFraction:
    __slots__ = ("blocks", "capacity_bits", "overflow_units", "carry_work")

    def __init__(self, capacity_bits: int):
        if capacity_bits < 1:
            raise ValueError(f"capacity must be positive, got {capacity_bits}")
        self.capacity_bits = capacity_bits
        self.blocks = [0] * (-(-capacity_bits // WORD_BITS))
        self.overflow_units = 0
        # block touches made by add_pow2; instrumentation only
        self.carry_work = 0

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def add_pow2(self, k: int) -> "FixedPointFraction":
        """Add ``2**-k`` exactly; carries ripple toward block 0."""
        if not 1 <= k <= self.capacity_bits:
            raise ValueError(f"exponent {k} outside [1, {self.capacity_bits}]")
        blocks = self.blocks
        b = (k - 1) >> 6
        x = blocks[b] + (1 << (63 - ((k - 1) & 63)))
        work = 1
        while x > WORD_MASK:
            blocks[b] = x & WORD_MASK
            b -= 1
            if b < 0:
                self.overflow_units += 1
                break
            x = blocks[b] + 1
            work += 1
        else:
            blocks[b] = x
        self.carry_work += work
        return self

    def add_unit(self) -> "FixedPointFraction":
        self.overflow_units += 1
        return self

    def merge(self, src: "FixedPointFraction") -> "FixedPointFraction":
        _check_capacity(self, src)
        dst = self.blocks
        carry = 0
        for i in range(len(dst) - 1, -1, -1):
            s = dst[i] + src.blocks[i] + carry
            dst[i] = s & WORD_MASK
            carry = s >> WORD_BITS
        self.overflow_units += src.overflow_units + carry
        return self

    def reset(self) -> "FixedPointFraction":
        blocks = self.blocks
        for i in range(len(blocks)):
            blocks[i] = 0
        self.overflow_units = 0
        return self

    def numerator(self) -> int:
        """Exact value times ``2 ** (64 * n_blocks)``."""
        v = self.overflow_units
        for x in self.blocks:
            v = (v << WORD_BITS) | x
        return v

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator(), 1 << (WORD_BITS * len(self.blocks)))

    def is_zero(self) -> bool:
        return self.overflow_units == 0 and not any(self.blocks)

    def copy(self) -> "FixedPointFraction":
        out = FixedPointFraction(self.capacity_bits)
        out.blocks = list(self.blocks)
        out.overflow_units = self.overflow_units
        return out

    def __repr__(self) -> str:
        return f"FixedPointFraction(capacity_bits={self.capacity_bits}, value={self.to_fraction()})"


def _check_capacity(a: FixedPointFraction, b: FixedPointFraction) -> None:
    if a.capacity_bits != b.capacity_bits:
        raise ValueError(
            f"capacity mismatch: {a.capacity_bits} vs {b.capacity_bits}"
        )


def fraction_add_pow2(f: FixedPointFraction, k: int) -> FixedPointFraction:
    return f.add_pow2(k)


def fraction_merge(dst: FixedPointFraction, src: FixedPointFraction) -> FixedPointFraction:
    return dst.merge(src)


def fraction_reset(f: FixedPointFraction) -> FixedPointFraction:
    return f.reset()


def fraction_pair_at_most_one(a: FixedPointFraction, b: FixedPointFraction) -> bool:
    """Whether ``a + b <= 1``, without modifying either operand.

    Blocks are added pairwise from the least significant end; the carry
    between blocks is at most one, so only a single word of scratch is used.
    """
    _check_capacity(a, b)
    ab, bb = a.blocks, b.blocks
    carry = 0
    nonzero = False
    for i in range(len(ab) - 1, -1, -1):
        s = ab[i] + bb[i] + carry
        carry = s >> WORD_BITS
        if s & WORD_MASK:
            nonzero = True
    units = a.overflow_units + b.overflow_units + carry
    return units == 0 or (units == 1 and not nonzero)


def kraft_fraction(depths: Sequence[int]) -> FixedPointFraction:
    """Accumulate ``sum(2**-d)`` over ``depths`` (depth 0 counts a whole unit)."""
    cap = max(1, max(depths, default=0))
    f = FixedPointFraction(cap)
    for d in depths:
        if d < 0:
            raise ValueError(f"negative depth {d}")
        if d == 0:
            f.add_unit()
        else:
            f.add_pow2(d)
    return f


def check_kraft_depths(depths: Sequence[int]) -> bool:
    f = kraft_fraction(depths)
    return fraction_pair_at_most_one(f, FixedPointFraction(f.capacity_bits))


def tree_from_sorted_depths(
    depths: Sequence[int], weights: Optional[Sequence] = None
) -> MinimaxTree:
    """Build a strictly binary tree whose leaves, left to right, sit at ``depths``.

    Leaves are placed leftmost-first, level by level from the bottom. When the
    Kraft sum is exactly one every leaf lands at its requested depth. When it
    is below one, a level with an odd node count lifts its last node one level
    instead of giving it a lone sibling, so those leaves end up shallower.

    Leaf ``i`` gets ``leaf_index = i`` and weight ``weights[i]`` (default 0).
    """
    n = len(depths)
    if n == 0:
        raise ValueError("no depths given")
    for i in range(1, n):
        if depths[i - 1] > depths[i]:
            raise ValueError(f"depths not nondecreasing at position {i}")
    if depths[0] < 0:
        raise ValueError(f"negative depth {depths[0]}")
    if not check_kraft_depths(depths):
        raise KraftError("depths violate the Kraft inequality")
    if weights is None:
        weights = [0] * n
    elif len(weights) != n:
        raise ValueError("weights and depths differ in length")

    # contiguous leaf ranges per depth, deepest first
    groups: list[tuple[int, int, int]] = []
    start = 0
    for i in range(1, n + 1):
        if i == n or depths[i] != depths[start]:
            groups.append((depths[start], start, i))
            start = i
    groups.reverse()

    left: list[int] = [NO_NODE] * n
    right: list[int] = [NO_NODE] * n
    g = 0
    d = groups[0][0]
    carry: list[int] = []
    while d > 0:
        if g < len(groups) and groups[g][0] == d:
            _, lo, hi = groups[g]
            level = list(range(lo, hi)) + carry
            g += 1
        else:
            level = carry
        parents = []
        for i in range(0, len(level) - 1, 2):
            left.append(level[i])
            right.append(level[i + 1])
            parents.append(len(left) - 1)
        if len(level) % 2:
            parents.append(level[-1])
        carry = parents
        if len(carry) == 1 and not (g < len(groups) and groups[g][0] == d - 1):
            # a lone node has no partner until the next level holding leaves
            d = groups[g][0] if g < len(groups) else 0
        else:
            d -= 1
    if g < len(groups):
        # depth-0 leaf: only possible for a single leaf
        root = groups[g][1]
    else:
        root = carry[0]

    m = len(left)
    leaf_index = list(range(n)) + [NO_NODE] * (m - n)
    leaf_w = list(weights) + [0] * (m - n)
    w = recompute_weights(left, right, leaf_w, range(n, m))
    return MinimaxTree(tuple(w), tuple(left), tuple(right), tuple(leaf_index), root)
