"""Prefix codes and group tests built from an estimated distribution.

If ``Q`` estimates the true distribution ``P``, the average length of any
prefix code ``C`` splits as ``H(P) + D(P||Q) + sum_i p_i (log2 q_i + |c_i|)``.
The last term is at most ``max_i (log2 q_i + |c_i|)`` whatever ``P`` is, and
that worst case is minimized exactly by a minimax tree for the weights
``log2 q_i``. A group-test decision tree is the same object read as a tree of
subset queries.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import MinimaxError, leaf_depths
from .real_minimax import build_minimax_real

PROB_TOL = 1e-9


class ZeroProbabilityError(MinimaxError):
    def __init__(self, index: int):
        super().__init__(f"symbol {index} has zero probability")
        self.index = index


@dataclass(frozen=True)
class Distribution:
    probs: tuple
    counts: Optional[tuple] = None

    def __post_init__(self):
        if not self.probs:
            raise MinimaxError("empty distribution")
        for p in self.probs:
            if not (p >= 0 and math.isfinite(p)):
                raise MinimaxError(f"invalid probability {p!r}")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > PROB_TOL:
            raise MinimaxError(f"probabilities sum to {total}, not 1")

    @classmethod
    def from_counts(cls, counts: Sequence[float]) -> "Distribution":
        total = math.fsum(counts)
        if any(c < 0 for c in counts) or total <= 0:
            raise MinimaxError("counts must be nonnegative with a positive total")
        return cls(tuple(c / total for c in counts), tuple(counts))

    @classmethod
    def from_probs(cls, probs: Sequence[float]) -> "Distribution":
        return cls(tuple(float(p) for p in probs))

    def __len__(self) -> int:
        return len(self.probs)

    def require_positive(self) -> None:
        for i, p in enumerate(self.probs):
            if p <= 0:
                raise ZeroProbabilityError(i)


def canonical_codewords(lengths: Sequence[int]) -> list[str]:
    """Canonical codewords: shorter first, ties broken by symbol index."""
    order = sorted(range(len(lengths)), key=lambda i: (lengths[i], i))
    words = [""] * len(lengths)
    code = 0
    prev = 0
    for i in order:
        k = lengths[i]
        code <<= k - prev
        prev = k
        words[i] = format(code, f"0{k}b") if k else ""
        code += 1
    return words


@dataclass(frozen=True)
class PrefixCode:
    lengths: tuple
    codewords: tuple

    @classmethod
    def from_lengths(cls, lengths: Sequence[int]) -> "PrefixCode":
        lengths = tuple(int(k) for k in lengths)
        return cls(lengths, tuple(canonical_codewords(lengths)))

    def encode(self, symbols: Iterable[int]) -> str:
        return "".join(self.codewords[s] for s in symbols)

    def decode(self, bits: str) -> list[int]:
        table = {w: i for i, w in enumerate(self.codewords)}
        out = []
        cur = ""
        for b in bits:
            cur += b
            sym = table.get(cur)
            if sym is not None:
                out.append(sym)
                cur = ""
        if cur:
            raise ValueError(f"trailing bits {cur!r} do not form a codeword")
        return out

    def max_pointwise_redundancy(self, q: Distribution) -> float:
        return max(
            math.log2(qi) + k for qi, k in zip(q.probs, self.lengths) if qi > 0
        )


def minimax_code(q: Distribution) -> PrefixCode:
    """Code whose worst-case pointwise redundancy against ``q`` is minimum."""
    q.require_positive()
    tree = build_minimax_real([math.log2(p) for p in q.probs])
    return PrefixCode.from_lengths(leaf_depths(tree))


def shannon_code(q: Distribution) -> PrefixCode:
    q.require_positive()
    return PrefixCode.from_lengths([math.ceil(-math.log2(p)) for p in q.probs])


def huffman_code(q: Distribution) -> PrefixCode:
    q.require_positive()
    n = len(q)
    if n < 2:
        raise MinimaxError("Huffman coding needs at least two symbols")
    parent = [-1] * (2 * n - 1)
    heap = [(p, i) for i, p in enumerate(q.probs)]
    heapq.heapify(heap)
    for new in range(n, 2 * n - 1):
        pa, a = heapq.heappop(heap)
        pb, b = heapq.heappop(heap)
        parent[a] = parent[b] = new
        heapq.heappush(heap, (pa + pb, new))
    depth = [0] * (2 * n - 1)
    for v in range(2 * n - 3, -1, -1):
        depth[v] = depth[parent[v]] + 1
    return PrefixCode.from_lengths(depth[:n])


@dataclass(frozen=True)
class RedundancyReport:
    entropy: float
    relative_entropy: float
    avg_length: float
    max_pointwise: float
    avg_excess: float

    @property
    def relative_entropy_infinite(self) -> bool:
        return math.isinf(self.relative_entropy)

    def to_dict(self) -> dict:
        out = {
            "entropy": self.entropy,
            "relative_entropy": None if self.relative_entropy_infinite else self.relative_entropy,
            "relative_entropy_infinite": self.relative_entropy_infinite,
            "avg_length": self.avg_length,
            "max_pointwise": self.max_pointwise,
            "avg_excess": None if math.isinf(self.avg_excess) else self.avg_excess,
        }
        return out


def redundancy_report(p: Distribution, q: Distribution, code: PrefixCode) -> RedundancyReport:
    """Entropy, divergence and redundancy of ``code`` (built for ``q``) on data from ``p``."""
    if not (len(p) == len(q) == len(code.lengths)):
        raise MinimaxError("distribution and code sizes differ")
    entropy = 0.0
    divergence = 0.0
    avg_length = 0.0
    direct = 0.0
    for pi, qi, k in zip(p.probs, q.probs, code.lengths):
        avg_length += pi * k
        if pi == 0:
            continue
        entropy -= pi * math.log2(pi)
        if qi == 0:
            divergence = math.inf
        else:
            divergence += pi * math.log2(pi / qi)
            direct += pi * (math.log2(qi) + k)
    max_pointwise = code.max_pointwise_redundancy(q)
    if math.isinf(divergence):
        avg_excess = -math.inf
    else:
        avg_excess = avg_length - entropy - divergence
        if abs(avg_excess - direct) > PROB_TOL * max(1.0, avg_length):
            raise ArithmeticError(
                f"redundancy identity off by {avg_excess - direct:g}"
            )
    return RedundancyReport(entropy, divergence, avg_length, max_pointwise, avg_excess)


@dataclass(frozen=True)
class PlanNode:
    """A set of candidate elements; internal nodes ask "is the target in ``yes``?"."""

    members: tuple
    yes: Optional["PlanNode"] = None
    no: Optional["PlanNode"] = None

    @property
    def is_leaf(self) -> bool:
        return self.yes is None

    @property
    def query(self) -> tuple:
        return () if self.yes is None else self.yes.members

    def depth_of(self) -> dict:
        out = {}
        stack = [(self, 0)]
        while stack:
            node, d = stack.pop()
            if node.is_leaf:
                out[node.members[0]] = d
            else:
                stack.append((node.yes, d + 1))
                stack.append((node.no, d + 1))
        return out


@dataclass(frozen=True)
class GroupTestPlan:
    root: PlanNode
    code: PrefixCode
    labels: tuple

    def expected_checks(self, p: Distribution) -> float:
        return math.fsum(pi * k for pi, k in zip(p.probs, self.code.lengths))

    @property
    def worst_case_checks(self) -> int:
        return max(self.code.lengths)

    def to_dict(self) -> dict:
        def render(node: PlanNode) -> dict:
            out: dict = {"members": [self.labels[i] for i in node.members]}
            if not node.is_leaf:
                out["query"] = [self.labels[i] for i in node.query]
                out["yes"] = render(node.yes)
                out["no"] = render(node.no)
            return out

        return render(self.root)


def _plan_from_codewords(words: Sequence[str]) -> PlanNode:
    def build(members: list[int], depth: int) -> PlanNode:
        while True:
            if len(members) == 1 and len(words[members[0]]) == depth:
                return PlanNode((members[0],))
            zeros = [i for i in members if words[i][depth] == "0"]
            ones = [i for i in members if words[i][depth] == "1"]
            if zeros and ones:
                return PlanNode(
                    tuple(members), build(zeros, depth + 1), build(ones, depth + 1)
                )
            # an unused branch would be a query with a known answer; skip it
            members = zeros or ones
            depth += 1

    order = sorted(range(len(words)), key=lambda i: words[i])
    return build(order, 0)


def group_test_plan(q: Distribution, labels: Optional[Sequence[str]] = None) -> GroupTestPlan:
    code = minimax_code(q)
    if labels is None:
        labels = [str(i) for i in range(len(q))]
    if len(labels) != len(q):
        raise MinimaxError("labels and distribution differ in length")
    return GroupTestPlan(_plan_from_codewords(code.codewords), code, tuple(labels))
