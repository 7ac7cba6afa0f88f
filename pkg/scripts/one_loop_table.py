"""Coefficients of the one-loop part, hair of the valence-0 trees against f(x) + Wh_{p,q}(x)."""

import argparse

from torus_kontsevich.recursion import TorusParams, hair_valence_zero, y_rat
from torus_kontsevich.series import series_f, wh_series


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", nargs="+", default=["2,3", "2,5", "3,4", "3,5", "2,7"])
    ap.add_argument("--order", type=int, default=12)
    args = ap.parse_args()

    for pair in args.pairs:
        p, q = map(int, pair.split(","))
        lhs = hair_valence_zero(y_rat(TorusParams(p, q, 0)), args.order)
        rhs = series_f(1, args.order) + wh_series(p, q, args.order)
        print(f"({p},{q}) {'match' if lhs == rhs else 'MISMATCH'}")
        for e in range(2, args.order + 1, 2):
            print(f"   x^{e:<3} {str(lhs[e]):>24} {str(rhs[e]):>24}")


if __name__ == "__main__":
    main()
