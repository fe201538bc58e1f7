"""``mxt`` command line: build trees, emit codes and group tests, verify, benchmark."""

from __future__ import annotations

import argparse
import gc
import itertools
import json
import math
import os
import random
import statistics
import sys
import time
from typing import Callable, Optional, Sequence, TextIO

import numpy as np

from .coding import (
    Distribution,
    ZeroProbabilityError,
    group_test_plan,
    huffman_code,
    minimax_code,
    redundancy_report,
    shannon_code,
)
from .core import (
    MinimaxError,
    minimax_cost,
    tree_to_json,
    tree_to_dot,
    validate_tree,
)
from .integer_minimax import build_minimax_heap, build_minimax_int
from .oracle import oracle_minimax_cost, oracle_threshold
from .real_minimax import build_minimax_real, decompose, normalize, select_threshold

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_FLAGS = 3
EXIT_ZERO_PROB = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_weight_file(text: str) -> list:
    """One integer or decimal weight per line; ``#`` comments and blanks skipped."""
    out: list = []
    for lineno, line in _content_lines(text):
        try:
            out.append(int(line))
            continue
        except ValueError:
            pass
        try:
            w = float(line)
        except ValueError:
            raise CliError(f"line {lineno}: cannot parse weight {line!r}", EXIT_PARSE) from None
        if not math.isfinite(w):
            raise CliError(f"line {lineno}: weight must be finite", EXIT_PARSE)
        out.append(w)
    if not out:
        raise CliError("no weights in input", EXIT_PARSE)
    return out


def parse_dist_file(text: str) -> tuple[list[str], list[float]]:
    """``symbol<TAB>count-or-prob`` lines."""
    symbols: list[str] = []
    values: list[float] = []
    seen = set()
    for lineno, line in _content_lines(text):
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise CliError(f"line {lineno}: expected 'symbol<TAB>value'", EXIT_PARSE)
        sym, raw = parts[0].strip(), parts[1].strip()
        try:
            v = float(raw)
        except ValueError:
            raise CliError(f"line {lineno}: bad value {raw!r}", EXIT_PARSE) from None
        if not math.isfinite(v) or v < 0:
            raise CliError(f"line {lineno}: value must be finite and nonnegative", EXIT_PARSE)
        if sym in seen:
            raise CliError(f"line {lineno}: duplicate symbol {sym!r}", EXIT_PARSE)
        seen.add(sym)
        symbols.append(sym)
        values.append(v)
    if not values or sum(values) <= 0:
        raise CliError("distribution needs at least one positive value", EXIT_PARSE)
    return symbols, values


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}", EXIT_PARSE) from None


def _load_dist(path: str) -> tuple[list[str], Distribution]:
    symbols, values = parse_dist_file(_read(path))
    return symbols, Distribution.from_counts(values)


# --- tree -------------------------------------------------------------------

def cmd_tree(args, out: TextIO) -> int:
    weights = parse_weight_file(_read(args.input))
    all_int = all(isinstance(w, int) for w in weights)
    mode = args.mode or ("int" if all_int else "real")
    if mode == "int" and not all_int:
        raise CliError("--mode int needs integer weights", EXIT_FLAGS)
    if mode == "int":
        tree = build_minimax_int(weights)
    elif mode == "real":
        tree = build_minimax_real(weights)
    else:
        tree = build_minimax_heap(weights)
    if args.format == "cost":
        out.write(f"{float(minimax_cost(tree)):.9f}\n")
    elif args.format == "json":
        out.write(tree_to_json(tree) + "\n")
    else:
        out.write(tree_to_dot(tree))
    return EXIT_OK


# --- code / grouptest -------------------------------------------------------

_CODERS = {"minimax": minimax_code, "shannon": shannon_code, "huffman": huffman_code}


def cmd_code(args, out: TextIO) -> int:
    symbols, q = _load_dist(args.input)
    try:
        code = _CODERS[args.algo](q)
    except ZeroProbabilityError as e:
        raise CliError(f"symbol {symbols[e.index]!r} has zero probability", EXIT_ZERO_PROB) from None
    except MinimaxError as e:
        raise CliError(str(e), EXIT_FLAGS) from None
    for sym, k, word in zip(symbols, code.lengths, code.codewords):
        out.write(f"{sym} {k} {word}\n")
    if args.report:
        p_symbols, p_values = parse_dist_file(_read(args.report))
        unknown = set(p_symbols) - set(symbols)
        if unknown:
            raise CliError(f"report distribution has unknown symbols {sorted(unknown)}", EXIT_PARSE)
        by_sym = dict(zip(p_symbols, p_values))
        p = Distribution.from_counts([by_sym.get(s, 0.0) for s in symbols])
        report = redundancy_report(p, q, code)
        out.write(json.dumps(report.to_dict(), sort_keys=True) + "\n")
    return EXIT_OK


def cmd_grouptest(args, out: TextIO) -> int:
    symbols, q = _load_dist(args.input)
    try:
        plan = group_test_plan(q, symbols)
    except ZeroProbabilityError as e:
        raise CliError(f"symbol {symbols[e.index]!r} has zero probability", EXIT_ZERO_PROB) from None
    doc = {
        "plan": plan.to_dict(),
        "worst_case_checks": plan.worst_case_checks,
        "expected_checks": plan.expected_checks(q),
    }
    out.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


# --- verify -----------------------------------------------------------------

def run_verify(
    n_max: int,
    trials: int,
    seed: int,
    out: TextIO,
    int_builder: Callable = build_minimax_int,
    real_builder: Callable = build_minimax_real,
    selector: Callable = select_threshold,
) -> int:
    """Cross-check the linear-time builders against the brute-force references.

    The builder arguments exist so tests can inject a faulty implementation.
    """
    rng = random.Random(seed)
    n_max = min(n_max, 10)
    checked = 0
    for n in range(1, n_max + 1):
        for ws in itertools.combinations_with_replacement(range(-4, 5), n):
            ws = list(ws)
            rng.shuffle(ws)
            expect = oracle_minimax_cost(ws)
            tree = int_builder(ws)
            got = minimax_cost(tree)
            if got != expect or validate_tree(tree, ws):
                out.write(f"integer mismatch on {ws}: got {got}, oracle {expect}\n")
                return EXIT_MISMATCH
            checked += 1
    out.write(f"integer exhaustive: {checked} multisets passed\n")
    if trials <= 0:
        out.write("all passed\n")
        return EXIT_OK

    for _ in range(trials):
        n = rng.randint(1, n_max)
        ws = [rng.uniform(-10.0, 0.0) for _ in range(n)]
        expect = oracle_minimax_cost(ws)
        tree = real_builder(ws)
        got = minimax_cost(tree)
        if abs(got - expect) > 1e-9 or validate_tree(tree, ws):
            out.write(f"real mismatch on {ws!r}: got {got!r}, oracle {expect!r}\n")
            return EXIT_MISMATCH
    out.write(f"real randomized: {trials} multisets passed\n")

    for _ in range(trials):
        n = rng.randint(2, 100)
        ws = [math.log2(rng.random() + 1e-12) for _ in range(n)]
        d = decompose(normalize(ws), n)
        got, _ = selector(d)
        expect = oracle_threshold(d)
        if got != expect:
            out.write(f"threshold mismatch on {ws!r}: got {got!r}, oracle {expect!r}\n")
            return EXIT_MISMATCH
    out.write(f"threshold agreement: {trials} distributions passed\n")
    out.write("all passed\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    return run_verify(args.n_max, args.trials, args.seed, out)


# --- bench ------------------------------------------------------------------

def parse_sizes(text: str) -> list[int]:
    sizes = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            if "^" in tok:
                base, exp = tok.split("^")
                v = int(base) ** int(exp)
            else:
                v = int(tok)
        except ValueError:
            raise CliError(f"bad size {tok!r}", EXIT_PARSE) from None
        if v < 1:
            raise CliError(f"sizes must be >= 1, got {v}", EXIT_PARSE)
        sizes.append(v)
    if not sizes:
        raise CliError("no sizes given", EXIT_PARSE)
    return sizes


def bench_inputs(n: int, algo: str, seed: int) -> list:
    rng = np.random.default_rng(seed)
    if algo == "int":
        return rng.integers(-n, n, size=n).tolist()
    return rng.uniform(-10.0, 0.0, size=n).tolist()


def run_bench(sizes: Sequence[int], algo: str, reps: int, seed: int) -> list[tuple[int, int, float]]:
    """Median construction time per size; input generation is outside the timed region."""
    build = build_minimax_int if algo == "int" else build_minimax_real
    rows = []
    for n in sizes:
        times = []
        for r in range(reps):
            ws = bench_inputs(n, algo, seed + r)
            gc.collect()
            gc.disable()
            try:
                t0 = time.perf_counter_ns()
                build(ws)
                t1 = time.perf_counter_ns()
            finally:
                gc.enable()
            times.append(max(t1 - t0, 1))
        med = int(statistics.median(times))
        rows.append((n, med, med / n))
    return rows


def cmd_bench(args, out: TextIO) -> int:
    rows = run_bench(parse_sizes(args.sizes), args.algo, args.reps, args.seed)
    out.write("n time_ns ns_per_elem\n")
    for n, t, per in rows:
        out.write(f"{n} {t} {per:.1f}\n")
    return EXIT_OK


# --- entry point ------------------------------------------------------------

def _default_seed() -> int:
    raw = os.environ.get("MXT_SEED")
    return int(raw) if raw else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mxt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tree", help="build a minimax tree from a weight file")
    p.add_argument("input", help="weight file, one weight per line ('-' for stdin)")
    p.add_argument("--mode", choices=["int", "real", "heap"])
    p.add_argument("--format", choices=["cost", "json", "dot"], default="cost")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("code", help="prefix code for a distribution file")
    p.add_argument("input", help="symbol<TAB>count-or-prob file")
    p.add_argument("--algo", choices=sorted(_CODERS), default="minimax")
    p.add_argument("--report", metavar="DISTFILE",
                   help="also report redundancy against this true distribution")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("grouptest", help="group-test plan for a distribution file")
    p.add_argument("input")
    p.set_defaults(func=cmd_grouptest)

    p = sub.add_parser("verify", help="cross-check builders against brute force")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time construction at several sizes")
    p.add_argument("--sizes", default="2^10,2^14,2^18")
    p.add_argument("--algo", choices=["int", "real"], default="real")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as e:
        print(f"mxt: {e}", file=sys.stderr)
        return e.code
    except MinimaxError as e:
        print(f"mxt: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
