import itertools

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def all_full_trees(n):
    """Every strictly binary tree on ``n`` leaves as nested tuples (leaves are ``None``)."""
    if n == 1:
        yield None
        return
    for a in range(1, n):
        for left in all_full_trees(a):
            for right in all_full_trees(n - a):
                yield (left, right)


def shape_depths(shape, d=0):
    if shape is None:
        return [d]
    return shape_depths(shape[0], d + 1) + shape_depths(shape[1], d + 1)


def brute_force_cost(weights):
    """Minimum of max(w + depth) over every tree shape and every leaf assignment."""
    best = None
    for shape in all_full_trees(len(weights)):
        depths = shape_depths(shape)
        for perm in set(itertools.permutations(weights)):
            c = max(w + d for w, d in zip(perm, depths))
            if best is None or c < best:
                best = c
    return best


def fraction_ops_agree(rng, capacity, n_ops):
    """Drive two FixedPointFractions and exact Fraction references with random ops.

    Returns (all_exact, adds, carry_work).
    """
    from fractions import Fraction

    from mxt.kraft import (
        FixedPointFraction,
        fraction_add_pow2,
        fraction_merge,
        fraction_pair_at_most_one,
        fraction_reset,
    )

    fs = [FixedPointFraction(capacity), FixedPointFraction(capacity)]
    refs = [Fraction(0), Fraction(0)]
    adds = 0
    for _ in range(n_ops):
        op = rng.random()
        i = rng.randrange(2)
        if op < 0.75:
            k = rng.randint(1, capacity)
            fraction_add_pow2(fs[i], k)
            refs[i] += Fraction(1, 2**k)
            adds += 1
        elif op < 0.85:
            fraction_merge(fs[i], fs[1 - i])
            refs[i] += refs[1 - i]
        elif op < 0.9:
            fraction_reset(fs[i])
            refs[i] = Fraction(0)
        else:
            before = (list(fs[0].blocks), list(fs[1].blocks))
            if fraction_pair_at_most_one(fs[0], fs[1]) != (refs[0] + refs[1] <= 1):
                return False, adds, 0
            if before != (fs[0].blocks, fs[1].blocks):
                return False, adds, 0
    exact = all(f.to_fraction() == r for f, r in zip(fs, refs))
    return exact, adds, fs[0].carry_work + fs[1].carry_work


ACCEPTANCE_RESULTS = []


def record_criterion(label, passed, detail=""):
    ACCEPTANCE_RESULTS.append((label, passed, detail))
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  {detail}")
