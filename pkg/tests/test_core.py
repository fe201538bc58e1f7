import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mxt.core import (
    MinimaxTree,
    leaf_depths,
    minimax_cost,
    tree_from_json,
    tree_to_dot,
    tree_to_json,
    validate_tree,
)
from mxt.integer_minimax import build_minimax_heap, build_minimax_int, build_minimax_sorted
from mxt.real_minimax import build_minimax_real

from conftest import brute_force_cost

# two leaves under one root
PAIR = MinimaxTree((0, 0, 1), (-1, -1, 0), (-1, -1, 1), (0, 1, -1), 2)


def test_single_leaf():
    t = MinimaxTree((5,), (-1,), (-1,), (0,), 0)
    assert minimax_cost(t) == 5
    assert leaf_depths(t) == [0]
    assert validate_tree(t, [5]) == []


def test_pair():
    assert minimax_cost(PAIR) == 1
    assert leaf_depths(PAIR) == [1, 1]
    assert validate_tree(PAIR, [0, 0]) == []


def test_balanced_four():
    t = build_minimax_int([0, 0, 0, 0])
    assert leaf_depths(t) == [2, 2, 2, 2]


def test_sorted_merge_depths():
    t = build_minimax_sorted([1, 2, 3])
    assert minimax_cost(t) == 4 == brute_force_cost([1, 2, 3])
    assert leaf_depths(t) == [2, 2, 1]


def test_bad_internal_weight_reported():
    bad = MinimaxTree((0, 0, 5), PAIR.left, PAIR.right, PAIR.leaf_index, 2)
    problems = validate_tree(bad, [0, 0])
    assert len(problems) == 1
    assert "node 2" in problems[0]


def test_wrong_leaf_multiset_reported():
    problems = validate_tree(PAIR, [0, 1])
    assert any("multiset" in p for p in problems)


def test_structural_violations():
    one_child = MinimaxTree((0, 1), (-1, 0), (-1, -1), (0, -1), 1)
    assert validate_tree(one_child, [0])
    shared = MinimaxTree((0, 1), (-1, 0), (-1, 0), (0, -1), 1)
    assert validate_tree(shared, [0, 0])
    orphan = MinimaxTree((0, 0, 1, 7), (-1, -1, 0, -1), (-1, -1, 1, -1), (0, 1, -1, 2), 2)
    assert any("unreachable" in p for p in validate_tree(orphan, [0, 0]))


weights = st.lists(st.integers(-20, 20), min_size=1, max_size=40)


@given(weights)
def test_cost_is_max_weight_plus_depth(ws):
    for t in (build_minimax_int(ws), build_minimax_heap(ws), build_minimax_real(ws)):
        depths = leaf_depths(t)
        assert minimax_cost(t) == pytest.approx(max(w + d for w, d in zip(ws, depths)), abs=1e-9)


@given(weights)
def test_builders_produce_valid_trees(ws):
    assert validate_tree(build_minimax_int(ws), ws) == []
    assert validate_tree(build_minimax_heap(ws), ws) == []
    real = [float(w) for w in ws]
    assert validate_tree(build_minimax_real(real), real) == []


@given(weights, st.randoms())
def test_permutation_invariance(ws, rnd):
    shuffled = list(ws)
    rnd.shuffle(shuffled)
    assert minimax_cost(build_minimax_int(ws)) == minimax_cost(build_minimax_int(shuffled))


@given(st.lists(st.floats(-50, 50), min_size=1, max_size=30))
def test_json_round_trip(ws):
    t = build_minimax_real(ws)
    back = tree_from_json(tree_to_json(t))
    assert back == t
    assert validate_tree(back, ws) == []


def test_json_schema():
    data = json.loads(tree_to_json(PAIR))
    assert data["root"] == 2
    assert data["nodes"][2] == {"weight": 1, "children": [0, 1]}
    assert data["nodes"][0] == {"weight": 0, "leaf_index": 0}


def test_dot_output():
    dot = tree_to_dot(PAIR)
    assert dot.startswith("digraph")
    assert "n2 -> n0;" in dot and "n2 -> n1;" in dot
    assert 'label="1"' in dot
