"""Worst-case pointwise redundancy of minimax, Shannon and Huffman codes on random estimates."""

import argparse
import random
import statistics

from mxt.coding import Distribution, huffman_code, minimax_code, shannon_code


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--n", type=int, default=64)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    coders = {"minimax": minimax_code, "shannon": shannon_code, "huffman": huffman_code}
    seen = {name: [] for name in coders}
    for _ in range(args.trials):
        q = Distribution.from_counts([rng.expovariate(1.0) + 1e-12 for _ in range(args.n)])
        for name, coder in coders.items():
            seen[name].append(coder(q).max_pointwise_redundancy(q))
    print(f"{'code':<9}{'mean':>9}{'max':>9}")
    for name, vals in seen.items():
        print(f"{name:<9}{statistics.fmean(vals):9.4f}{max(vals):9.4f}")


if __name__ == "__main__":
    main()
