"""torus-kontsevich: expand X_{p,q}, list the bubble trees of Y^rat, run the verification suites.

Exit status: 0 success, 1 a verification check failed, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .checks import SUITES, run_suites
from .recursion import ConvergenceError, TorusParams, x_pq_limit, y_rat
from .render import series_tex_lines, series_text, tex_document, trees_tex_lines, trees_text

REPORT_DIR_ENV = "TORUS_KONTSEVICH_REPORT_DIR"
FORMATS = ("json", "latex", "text")


@dataclass
class RunConfig:
    command: str
    p: int = 2
    q: int = 3
    e_max: int = 3
    order: int = 12
    r_values: list[int] = field(default_factory=lambda: [5, 7])
    output_format: str = "json"
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    out: Path | None = None

    def params(self) -> TorusParams:
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if any(r < 2 for r in self.r_values):
            raise ValueError("r values must be >= 2")
        return TorusParams(self.p, self.q, self.e_max)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2)
    common.add_argument("--q", type=int, default=3)
    common.add_argument("--e-max", type=int, default=3, dest="e_max")
    common.add_argument("--order", type=int, default=12)
    common.add_argument("--r", type=int, nargs="+", default=[5, 7], dest="r_values")
    common.add_argument("--format", choices=FORMATS, default="json", dest="output_format")
    common.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="torus-kontsevich", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("expand", parents=[common], help="X_{p,q} through e_max edges")
    sub.add_parser("trees", parents=[common], help="decorated bubble trees of Y^rat_{p,q}")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=["all", *SUITES], nargs="+", default=["all"])
    return parser


def parse_config(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    suites = list(SUITES)
    if ns.command == "verify" and "all" not in ns.suite:
        suites = list(dict.fromkeys(ns.suite))
    return RunConfig(
        command=ns.command,
        p=ns.p,
        q=ns.q,
        e_max=ns.e_max,
        order=ns.order,
        r_values=ns.r_values,
        output_format=ns.output_format,
        suites=suites,
        out=ns.out,
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _header(cfg: RunConfig) -> dict:
    return {"p": cfg.p, "q": cfg.q, "e_max": cfg.e_max}


def cmd_expand(cfg: RunConfig, params: TorusParams) -> tuple[int, str]:
    x = x_pq_limit(params)
    if cfg.output_format == "json":
        return 0, dumps({**_header(cfg), "series": x.to_json()})
    if cfg.output_format == "latex":
        return 0, tex_document(f"X_{{{cfg.p},{cfg.q}}}", series_tex_lines(x))
    return 0, series_text(x) + "\n"


def cmd_trees(cfg: RunConfig, params: TorusParams) -> tuple[int, str]:
    trees = y_rat(params)
    if cfg.output_format == "json":
        return 0, dumps({**_header(cfg), "trees": [t.to_json() for t in trees]})
    if cfg.output_format == "latex":
        return 0, tex_document(f"Y^{{rat}}_{{{cfg.p},{cfg.q}}}", trees_tex_lines(trees))
    return 0, trees_text(trees) + "\n"


def cmd_verify(cfg: RunConfig, params: TorusParams) -> tuple[int, str]:
    report = run_suites(cfg.suites, params, order=cfg.order, r_values=cfg.r_values)
    # timings vary run to run; keep them out of the emitted report
    for results in report["suites"].values():
        for r in results:
            r.pop("seconds", None)
    report_dir = os.environ.get(REPORT_DIR_ENV)
    if report_dir:
        d = Path(report_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "verify-report.json").write_text(dumps(report))
    if cfg.output_format == "json":
        text = dumps(report)
    else:
        lines = [
            f"{'PASS' if r['passed'] else 'FAIL'}  [{name}] {r['name']}"
            for name, results in report["suites"].items()
            for r in results
        ]
        text = "\n".join(lines) + "\n"
    return (0 if report["passed"] else 1), text


COMMANDS = {"expand": cmd_expand, "trees": cmd_trees, "verify": cmd_verify}


def main(argv=None) -> int:
    cfg = parse_config(argv)
    try:
        params = cfg.params()
    except ValueError as exc:
        print(f"torus-kontsevich: error: {exc}", file=sys.stderr)
        return 2
    try:
        status, text = COMMANDS[cfg.command](cfg, params)
    except ConvergenceError as exc:
        print(f"torus-kontsevich: {exc}", file=sys.stderr)
        return 1
    if cfg.out is not None:
        cfg.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
