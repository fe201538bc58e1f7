import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mxt.core import KraftError, leaf_depths, validate_tree
from mxt.integer_minimax import build_minimax_int
from mxt.kraft import (
    FixedPointFraction,
    check_kraft_depths,
    fraction_add_pow2,
    fraction_merge,
    fraction_pair_at_most_one,
    fraction_reset,
    tree_from_sorted_depths,
)

from conftest import fraction_ops_agree


def frac_of(capacity, *exps):
    f = FixedPointFraction(capacity)
    for k in exps:
        f.add_pow2(k)
    return f


def test_carry_identity():
    a = frac_of(10, 3, 3)
    b = frac_of(10, 2)
    assert a.blocks == b.blocks
    assert a.overflow_units == b.overflow_units == 0


def test_whole_unit_carry():
    f = frac_of(5, 1, 1)
    assert f.overflow_units == 1
    assert not any(f.blocks)


def test_carry_across_blocks():
    f = frac_of(128, *range(1, 129))
    assert f.to_fraction() == 1 - Fraction(1, 2**128)
    f.add_pow2(128)
    assert f.overflow_units == 1
    assert f.blocks == [0, 0]


def test_random_adds_exact():
    rng = random.Random(3)
    f = FixedPointFraction(300)
    ref = Fraction(0)
    for _ in range(1000):
        k = rng.randint(1, 300)
        fraction_add_pow2(f, k)
        ref += Fraction(1, 2**k)
    assert f.to_fraction() == ref


def test_add_range():
    f = FixedPointFraction(8)
    with pytest.raises(ValueError):
        f.add_pow2(0)
    with pytest.raises(ValueError):
        f.add_pow2(9)


def test_pair_examples():
    assert fraction_pair_at_most_one(frac_of(4, 1), frac_of(4, 1))
    assert not fraction_pair_at_most_one(frac_of(4, 1, 2), frac_of(4, 1))
    with pytest.raises(ValueError):
        fraction_pair_at_most_one(FixedPointFraction(4), FixedPointFraction(5))


def test_pair_is_nondestructive():
    a, b = frac_of(100, 1, 70), frac_of(100, 2, 99)
    snap = (list(a.blocks), a.overflow_units, list(b.blocks), b.overflow_units)
    fraction_pair_at_most_one(a, b)
    assert snap == (a.blocks, a.overflow_units, b.blocks, b.overflow_units)


def test_pair_random_against_rationals():
    rng = random.Random(11)
    for _ in range(10_000):
        cap = rng.randint(1, 200)
        a = frac_of(cap, *(rng.randint(1, cap) for _ in range(rng.randint(0, 6))))
        b = frac_of(cap, *(rng.randint(1, cap) for _ in range(rng.randint(0, 6))))
        expect = a.to_fraction() + b.to_fraction() <= 1
        assert fraction_pair_at_most_one(a, b) == expect


def test_merge_examples():
    dst = frac_of(6, 2)
    fraction_merge(dst, frac_of(6, 2))
    assert dst.to_fraction() == Fraction(1, 2)
    src = frac_of(90, 3, 77, 90)
    dst = FixedPointFraction(90)
    fraction_merge(dst, src)
    assert dst.to_fraction() == src.to_fraction()
    assert src.to_fraction() == Fraction(1, 8) + Fraction(1, 2**77) + Fraction(1, 2**90)
    with pytest.raises(ValueError):
        fraction_merge(FixedPointFraction(3), FixedPointFraction(4))


def test_merge_random():
    rng = random.Random(5)
    for _ in range(500):
        cap = rng.randint(1, 300)
        a = frac_of(cap, *(rng.randint(1, cap) for _ in range(rng.randint(0, 20))))
        b = frac_of(cap, *(rng.randint(1, cap) for _ in range(rng.randint(0, 20))))
        expect = a.to_fraction() + b.to_fraction()
        assert fraction_merge(a, b).to_fraction() == expect


def test_reset():
    f = frac_of(70, 1, 1, 64, 65)
    fraction_reset(f)
    assert f.to_fraction() == 0
    fraction_reset(f)
    assert f.is_zero()
    f.add_pow2(5)
    assert f.to_fraction() == Fraction(1, 32)


@given(st.integers(1, 500), st.integers(0, 2**32))
def test_op_sequences_match_reference(capacity, seed):
    exact, adds, work = fraction_ops_agree(random.Random(seed), capacity, 60)
    assert exact
    assert work <= 4 * (adds + capacity)


def test_add_only_amortized_work():
    rng = random.Random(0)
    f = FixedPointFraction(4096)
    m = 200_000
    for _ in range(m):
        # small exponents force long carry chains through full blocks
        f.add_pow2(rng.choice((1, 2, 64, 128, 4096)))
    assert f.carry_work <= 2 * m + f.n_blocks


@pytest.mark.parametrize(
    "depths,ok",
    [([1, 2, 2], True), ([1, 1, 2], False), ([0], True), ([0, 1], False), ([3, 3], True)],
)
def test_check_kraft(depths, ok):
    assert check_kraft_depths(depths) is ok


def test_tree_from_depths_shapes():
    t = tree_from_sorted_depths([1, 2, 2])
    assert leaf_depths(t) == [1, 2, 2]
    assert [t.leaf_index[v] for v in t.leaves()] == [0, 1, 2]
    t = tree_from_sorted_depths([2, 2, 2, 2])
    assert leaf_depths(t) == [2, 2, 2, 2]
    assert tree_from_sorted_depths([0]).n_nodes == 1


def test_tree_from_depths_errors():
    with pytest.raises(KraftError):
        tree_from_sorted_depths([1, 1, 1])
    with pytest.raises(ValueError):
        tree_from_sorted_depths([2, 1, 2])


def test_tree_from_depths_carries_weights():
    t = tree_from_sorted_depths([1, 2, 2], [5, 3, 3])
    assert validate_tree(t, [5, 3, 3]) == []
    assert t.weights[t.root] == 6


def test_tree_from_depths_slack():
    # Kraft sum 3/4: the odd leaf is lifted, never deepened
    t = tree_from_sorted_depths([2, 2, 2])
    got = leaf_depths(t)
    assert all(g <= d for g, d in zip(got, [2, 2, 2]))
    assert validate_tree(t, [0, 0, 0]) == []
    t = tree_from_sorted_depths([1, 40])
    assert leaf_depths(t) == [1, 1]


@given(st.lists(st.integers(-8, 8), min_size=1, max_size=10))
def test_depths_round_trip(ws):
    depths = sorted(leaf_depths(build_minimax_int(ws)))
    assert check_kraft_depths(depths)
    assert leaf_depths(tree_from_sorted_depths(depths)) == depths
