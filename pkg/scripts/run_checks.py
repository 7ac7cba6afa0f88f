"""Run every verification suite on several knots and write one JSON report per knot."""

import argparse
import json
from pathlib import Path

from torus_kontsevich.checks import SUITES, run_suites
from torus_kontsevich.recursion import TorusParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", nargs="+", default=["2,3", "2,5", "3,4"])
    ap.add_argument("--e-max", type=int, default=3)
    ap.add_argument("--order", type=int, default=12)
    ap.add_argument("--r", type=int, nargs="+", default=[5, 7])
    ap.add_argument("--out-dir", type=Path, default=Path("reports"))
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    ok = True
    for pair in args.pairs:
        p, q = map(int, pair.split(","))
        params = TorusParams(p, q, args.e_max)
        # lift needs r coprime to p and q
        r_values = [r for r in args.r if r % p and r % q]
        names = [n for n in SUITES if n != "lift" or r_values]
        report = run_suites(names, params, order=args.order, r_values=r_values)
        path = args.out_dir / f"report_{p}_{q}.json"
        path.write_text(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
        for name, results in report["suites"].items():
            for r in results:
                print(f"{'PASS' if r['passed'] else 'FAIL'}  ({p},{q}) [{name}] {r['name']}  {r['seconds']:.2f}s")
        ok &= report["passed"]
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
