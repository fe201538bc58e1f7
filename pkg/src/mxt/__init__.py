"""Minimax trees in linear time, and the prefix codes and group tests built on them."""

from .core import (
    EmptyInputError,
    KraftError,
    MinimaxError,
    MinimaxTree,
    WeightOverflowError,
    leaf_depths,
    minimax_cost,
    validate_tree,
)
from .integer_minimax import (
    build_minimax_heap,
    build_minimax_int,
    build_minimax_sorted,
    clamp_weights,
    sort_clamped,
)
from .kraft import FixedPointFraction, check_kraft_depths, tree_from_sorted_depths
from .real_minimax import build_minimax_real, decompose, normalize, select_threshold
from .coding import (
    Distribution,
    PrefixCode,
    group_test_plan,
    huffman_code,
    minimax_code,
    redundancy_report,
    shannon_code,
)
