"""Term counts and timings of X_{p,q} and Y^rat_{p,q} by edge budget."""

import argparse
import time

from torus_kontsevich.recursion import TorusParams, x_pq_limit, y_rat


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", nargs="+", default=["2,3", "2,5", "3,4", "3,5"])
    ap.add_argument("--e-max", type=int, default=4)
    args = ap.parse_args()

    print(f"{'p,q':>6} {'E':>2} {'X terms':>8} {'trees':>6} {'seconds':>8}")
    for pair in args.pairs:
        p, q = map(int, pair.split(","))
        for e in range(args.e_max + 1):
            P = TorusParams(p, q, e)
            t0 = time.perf_counter()
            x = x_pq_limit(P)
            trees = y_rat(P, x)
            print(f"{pair:>6} {e:>2} {len(x):>8} {len(trees):>6} {time.perf_counter() - t0:>8.2f}")


if __name__ == "__main__":
    main()
