"""Rank of the union-power inclusion matrix over a grid of (n, d, k).

Prints one row per case with shape, rank and wall time. Cases with k > d/2
show the rank deficiency that the parity construction runs into.
"""
import argparse
import time

from symdiff_codes.algebra_checks import verify_independence


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, nargs="+", default=[2, 3, 4, 6])
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--extra-k", action="store_true", help="also try k = d//2 + 1")
    args = ap.parse_args()

    print(f"{'n':>4} {'d':>3} {'k':>3} {'rows':>8} {'cols':>8} {'rank':>8} {'indep':>6} {'sec':>7}")
    for d in args.d:
        ks = list(range(1, d // 2 + 1)) + ([d // 2 + 1] if args.extra_k else [])
        for k in ks:
            for n in range(max(d, 2), args.max_n + 1):
                t0 = time.perf_counter()
                r = verify_independence(n, d, k)
                dt = time.perf_counter() - t0
                print(f"{n:>4} {d:>3} {k:>3} {r.rows:>8} {r.cols:>8} {r.rank:>8} {str(r.independent):>6} {dt:7.3f}")


if __name__ == "__main__":
    main()
