import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mxt.selection import lower_median, select_kth


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=500), st.data())
def test_select_matches_sort(xs, data):
    k = data.draw(st.integers(0, len(xs) - 1))
    assert select_kth(np.array(xs), k) == sorted(xs)[k]


@given(st.lists(st.integers(0, 3), min_size=1, max_size=300))
def test_heavy_duplicates(xs):
    a = np.array(xs, dtype=float)
    assert lower_median(a) == sorted(xs)[(len(xs) - 1) // 2]


def test_large_adversarial_orders():
    n = 100_001
    for a in (np.arange(n, dtype=float), np.arange(n, 0, -1, dtype=float),
              np.tile([0.0, 1.0, 2.0, 3.0, 4.0], n // 5)):
        assert lower_median(a) == np.sort(a)[(a.size - 1) // 2]


def test_out_of_range():
    with pytest.raises(IndexError):
        select_kth(np.array([1.0]), 1)
