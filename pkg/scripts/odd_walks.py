"""Odd closed walks when more intervals are allowed than d/2.

For each (n, d) with k = d//2 + 1 the script builds the binary-order walk of
length 2**(d+1) - 1, verifies it, and for tiny cases also runs BFS to find
the shortest odd cycle it hits first.
"""
import argparse

from symdiff_codes.errors import TooLarge
from symdiff_codes.witness_walks import bfs_bipartite, is_simple_cycle, odd_closed_walk, verify_walk


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-d", type=int, default=5)
    ap.add_argument("--extra-n", type=int, default=1, help="n ranges over d+1 .. d+1+extra-n")
    args = ap.parse_args()

    for d in range(1, args.max_d + 1):
        k = d // 2 + 1
        for n in range(d + 1, d + 2 + args.extra_n):
            w = odd_closed_walk(n, d, k)
            line = f"n={n} d={d} k={k} walk_len={w.length} verified={verify_walk(w, n, d, k)}"
            try:
                res = bfs_bipartite(n, d, k)
            except TooLarge:
                line += " bfs=skipped"
            else:
                cyc = res.odd_cycle
                line += f" bfs_bipartite={res.bipartite}"
                if cyc is not None:
                    line += f" bfs_cycle_len={cyc.length} simple={is_simple_cycle(cyc)}"
            print(line)


if __name__ == "__main__":
    main()
