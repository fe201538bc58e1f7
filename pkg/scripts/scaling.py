"""Construction time per element over a range of sizes, for both builders."""

import argparse

from mxt.cli import parse_sizes, run_bench


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="2^10,2^12,2^14,2^16,2^18,2^20")
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = parse_sizes(args.sizes)
    rows = {algo: run_bench(sizes, algo, args.reps, args.seed) for algo in ("int", "real")}
    print(f"{'n':>9} {'int ns/elem':>12} {'real ns/elem':>13}")
    for (n, _, a), (_, _, b) in zip(rows["int"], rows["real"]):
        print(f"{n:>9} {a:>12.0f} {b:>13.0f}")


if __name__ == "__main__":
    main()
