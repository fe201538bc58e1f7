"""Huffman vs minimax codes on Fibonacci-shaped estimates.

Q is proportional to (F_n, ..., F_1) and the true distribution puts almost all
mass on the last symbol. Prints the Huffman average excess over H(P) + D(P||Q)
next to the minimax code's worst-case pointwise redundancy.
"""

import argparse
import math

from mxt.coding import Distribution, huffman_code, minimax_code, redundancy_report


def fib_desc(n):
    f = [1, 1]
    while len(f) < n:
        f.append(f[-1] + f[-2])
    return f[:n][::-1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="5,10,20,40,80")
    ap.add_argument("--eps", type=float, default=1e-6)
    args = ap.parse_args()
    phi = (1 + 5**0.5) / 2
    print("n  huffman_excess  excess/n  excess/log2(1/q_n)  minimax_max_pointwise")
    for n in map(int, args.sizes.split(",")):
        q = Distribution.from_counts(fib_desc(n))
        p = Distribution.from_probs([args.eps] * (n - 1) + [1 - (n - 1) * args.eps])
        hu = redundancy_report(p, q, huffman_code(q))
        mm = redundancy_report(p, q, minimax_code(q))
        ideal = -math.log2(q.probs[-1])
        print(f"{n:<3}{hu.avg_excess:14.4f}{hu.avg_excess / n:10.4f}{hu.avg_excess / ideal:20.4f}{mm.max_pointwise:23.4f}")
    print(f"limits: 1 - log2(phi) = {1 - math.log2(phi):.4f}, 1/log2(phi) - 1 = {1 / math.log2(phi) - 1:.4f}")


if __name__ == "__main__":
    main()
