"""Shared tree types and helpers.

A minimax tree is stored as an index arena: parallel tuples of node weights,
left/right child indices (``-1`` for leaves) and the input position carried by
each leaf (``-1`` for internal nodes).
"""

from __future__ import annotations

import json
import math
import operator
from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Union

Weight = Union[int, float]

NO_NODE = -1

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class MinimaxError(ValueError):
    """Base class for invalid inputs to the tree builders."""


class EmptyInputError(MinimaxError):
    pass


class WeightOverflowError(MinimaxError):
    pass


class KraftError(MinimaxError):
    pass


@dataclass(frozen=True)
class MinimaxTree:
    weights: tuple
    left: tuple
    right: tuple
    leaf_index: tuple
    root: int

    @property
    def n_nodes(self) -> int:
        return len(self.weights)

    @property
    def n_leaves(self) -> int:
        return sum(1 for i in self.leaf_index if i != NO_NODE)

    def is_leaf(self, node: int) -> bool:
        return self.left[node] == NO_NODE

    def leaves(self) -> list[int]:
        """Leaf node ids in left-to-right order."""
        out = []
        stack = [self.root]
        left, right = self.left, self.right
        while stack:
            v = stack.pop()
            if left[v] == NO_NODE:
                out.append(v)
            else:
                stack.append(right[v])
                stack.append(left[v])
        return out


def as_int_weights(weights: Sequence) -> list[int]:
    """Validate an integer weight multiset and return it as a list of ints."""
    out = []
    for w in weights:
        if isinstance(w, bool):
            raise MinimaxError(f"non-integer weight {w!r}")
        try:
            out.append(operator.index(w))
        except TypeError:
            raise MinimaxError(f"non-integer weight {w!r}") from None
    if not out:
        raise EmptyInputError("weight multiset is empty")
    return out


def as_real_weights(weights: Sequence) -> list[float]:
    out = [float(w) for w in weights]
    if not out:
        raise EmptyInputError("weight multiset is empty")
    for w in out:
        if not math.isfinite(w):
            raise MinimaxError(f"non-finite weight {w!r}")
    return out


def recompute_weights(
    left: Sequence[int], right: Sequence[int], leaf_weights: Sequence, order: Sequence[int]
) -> list:
    """Internal weights bottom-up: ``order`` must list children before parents.

    ``leaf_weights[v]`` is read for leaf nodes only.
    """
    w = list(leaf_weights)
    for v in order:
        a = left[v]
        if a != NO_NODE:
            wa, wb = w[a], w[right[v]]
            w[v] = (wa if wa >= wb else wb) + 1
    return w


def minimax_cost(tree: MinimaxTree) -> Weight:
    return tree.weights[tree.root]


def node_depths(tree: MinimaxTree) -> list[int]:
    depth = [0] * tree.n_nodes
    stack = [tree.root]
    left, right = tree.left, tree.right
    while stack:
        v = stack.pop()
        a = left[v]
        if a != NO_NODE:
            d = depth[v] + 1
            depth[a] = d
            depth[right[v]] = d
            stack.append(a)
            stack.append(right[v])
    return depth


def leaf_depths(tree: MinimaxTree) -> list[int]:
    """Depth of every leaf, listed by the leaf's input index."""
    depth = node_depths(tree)
    n = tree.n_leaves
    out = [0] * n
    for v, i in enumerate(tree.leaf_index):
        if i != NO_NODE:
            out[i] = depth[v]
    return out


def validate_tree(tree: MinimaxTree, weights: Sequence) -> list[str]:
    """Check every structural invariant of ``tree`` against ``weights``.

    Returns a list of human-readable violations; an empty list means valid.
    """
    problems: list[str] = []
    m = len(tree.weights)
    if not (len(tree.left) == len(tree.right) == len(tree.leaf_index) == m):
        return ["arena arrays have different lengths"]
    if not 0 <= tree.root < m:
        return [f"root {tree.root} out of range"]

    seen = [False] * m
    depth = [0] * m
    stack = [tree.root]
    seen[tree.root] = True
    reached = []
    while stack:
        v = stack.pop()
        reached.append(v)
        a, b = tree.left[v], tree.right[v]
        if (a == NO_NODE) != (b == NO_NODE):
            problems.append(f"node {v} has exactly one child")
            continue
        if a == NO_NODE:
            if tree.leaf_index[v] == NO_NODE:
                problems.append(f"leaf {v} has no leaf_index")
            continue
        if tree.leaf_index[v] != NO_NODE:
            problems.append(f"internal node {v} carries leaf_index")
        for c in (a, b):
            if not 0 <= c < m:
                problems.append(f"node {v} has child {c} out of range")
            elif seen[c]:
                problems.append(f"node {c} reached twice")
            else:
                seen[c] = True
                depth[c] = depth[v] + 1
                stack.append(c)
    if problems:
        return problems
    if len(reached) != m:
        problems.append(f"{m - len(reached)} nodes unreachable from root")

    leaves = [v for v in reached if tree.left[v] == NO_NODE]
    n = len(weights)
    if sorted(tree.leaf_index[v] for v in leaves) != list(range(n)):
        problems.append("leaf indices are not a permutation of the input positions")
    if Counter(tree.weights[v] for v in leaves) != Counter(weights):
        problems.append("leaf weight multiset differs from input")

    for v in reached:
        a = tree.left[v]
        if a == NO_NODE:
            continue
        expect = max(tree.weights[a], tree.weights[tree.right[v]]) + 1
        if tree.weights[v] != expect:
            problems.append(
                f"node {v} has weight {tree.weights[v]!r}, expected {expect!r}"
            )
    height = max(depth[v] for v in reached)
    if n >= 1 and height > n - 1:
        problems.append(f"height {height} exceeds n - 1 = {n - 1}")
    return problems


def tree_to_dict(tree: MinimaxTree) -> dict:
    nodes = []
    for v in range(tree.n_nodes):
        node: dict = {"weight": tree.weights[v]}
        if tree.left[v] != NO_NODE:
            node["children"] = [tree.left[v], tree.right[v]]
        else:
            node["leaf_index"] = tree.leaf_index[v]
        nodes.append(node)
    return {"nodes": nodes, "root": tree.root}


def tree_to_json(tree: MinimaxTree) -> str:
    return json.dumps(tree_to_dict(tree))


def tree_from_dict(data: dict) -> MinimaxTree:
    nodes = data["nodes"]
    weights, left, right, leaf_index = [], [], [], []
    for node in nodes:
        weights.append(node["weight"])
        ch = node.get("children")
        if ch:
            left.append(int(ch[0]))
            right.append(int(ch[1]))
        else:
            left.append(NO_NODE)
            right.append(NO_NODE)
        leaf_index.append(int(node.get("leaf_index", NO_NODE)))
    return MinimaxTree(tuple(weights), tuple(left), tuple(right), tuple(leaf_index), int(data["root"]))


def tree_from_json(text: str) -> MinimaxTree:
    return tree_from_dict(json.loads(text))


def format_weight(w: Weight) -> str:
    if isinstance(w, int):
        return str(w)
    return repr(float(w))


def tree_to_dot(tree: MinimaxTree, name: str = "minimax") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(tree.n_nodes):
        label = format_weight(tree.weights[v])
        if tree.leaf_index[v] != NO_NODE:
            lines.append(f'  n{v} [shape=box, label="{label}\\n#{tree.leaf_index[v]}"];')
        else:
            lines.append(f'  n{v} [label="{label}"];')
    for v in range(tree.n_nodes):
        if tree.left[v] != NO_NODE:
            lines.append(f"  n{v} -> n{tree.left[v]};")
            lines.append(f"  n{v} -> n{tree.right[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
