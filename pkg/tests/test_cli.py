import json
import re
import shutil
import subprocess
import sys

import pytest

from torus_kontsevich import checks
from torus_kontsevich.checks import CheckResult
from torus_kontsevich.cli import REPORT_DIR_ENV, main
from torus_kontsevich.graphs import GraphSeries, relabel
from torus_kontsevich.recursion import TorusParams, x_pq_limit


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "--p", "2", "--q", "3", "--e-max", "1", "--format", "text")
    assert code == 0
    lines = [ln.split() for ln in out.strip().splitlines()]
    assert lines == [
        ["+1", "•a"],
        ["+1", "•b"],
        ["-1", "•c"],
        ["+1/6", "a-b"],
        ["-1/6", "a-c"],
        ["-1/6", "b-c"],
        ["+1/6", "c-c"],
    ]


def test_non_coprime_is_usage_error(capsys):
    code, out, err = run(capsys, "expand", "--p", "2", "--q", "2")
    assert code == 2
    assert "p and q must be coprime" in err
    assert out == ""


def test_bad_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_expand_json_round_trip(capsys):
    code, out, _ = run(capsys, "expand", "--p", "2", "--q", "5", "--e-max", "2")
    assert code == 0
    obj = json.loads(out)
    assert (obj["p"], obj["q"], obj["e_max"]) == (2, 5, 2)
    assert GraphSeries.from_json(obj["series"], 2) == x_pq_limit(TorusParams(2, 5, 2))


def test_swap_symmetry_through_cli(capsys):
    _, a, _ = run(capsys, "expand", "--p", "2", "--q", "3", "--e-max", "1")
    _, b, _ = run(capsys, "expand", "--p", "3", "--q", "2", "--e-max", "1")
    sa = GraphSeries.from_json(json.loads(a)["series"], 1)
    sb = GraphSeries.from_json(json.loads(b)["series"], 1)
    assert relabel(sa, {"a": "b", "b": "a"}) == sb


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "trees", "--e-max", "2")[1] for _ in range(2)}
    assert len(outs) == 1


def test_output_is_deterministic_across_processes():
    cmd = [sys.executable, "-m", "torus_kontsevich", "expand", "--e-max", "2"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True, env={"PYTHONHASHSEED": "7", "PATH": ""}).stdout
    assert a == b


def test_trees_leading_terms(capsys):
    code, out, _ = run(capsys, "trees", "--p", "2", "--q", "3", "--e-max", "0", "--format", "text")
    assert code == 0
    assert [ln.split() for ln in out.strip().splitlines()] == [["+1", "f(2h)"], ["+1", "f(3h)"], ["-1", "f(6h)"]]


def test_trees_json_has_only_trees(capsys):
    _, out, _ = run(capsys, "trees", "--e-max", "2")
    trees = json.loads(out)["trees"]
    assert trees
    for t in trees:
        edges = [tuple(e) for e in t["tree"]["edges"]]
        assert len(set(edges)) == len(edges)
        assert len(edges) == len(t["tree"]["colors"]) - 1
        assert len(t["vertices"]) == len(t["tree"]["colors"])


def _balanced(tex: str) -> bool:
    depth = 0
    for ch in tex.replace(r"\{", "").replace(r"\}", ""):
        depth += {"{": 1, "}": -1}.get(ch, 0)
        if depth < 0:
            return False
    return depth == 0


@pytest.mark.parametrize("command", ["expand", "trees"])
def test_latex_structure(capsys, command):
    code, out, _ = run(capsys, command, "--e-max", "2", "--format", "latex")
    assert code == 0
    assert _balanced(out)
    assert re.findall(r"\\begin\{(\w+\*?)\}", out) == re.findall(r"\\end\{(\w+\*?)\}", out)[::-1]


@pytest.mark.skipif(shutil.which("pdflatex") is None, reason="no LaTeX toolchain installed")
def test_latex_compiles(tmp_path, capsys):
    _, out, _ = run(capsys, "trees", "--format", "latex")
    (tmp_path / "trees.tex").write_text(out)
    proc = subprocess.run(
        ["pdflatex", "-interaction=nonstopmode", "-halt-on-error", "trees.tex"],
        cwd=tmp_path,
        capture_output=True,
    )
    assert proc.returncode == 0, proc.stdout[-2000:]


def test_verify_passes_and_writes_report(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(REPORT_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, "verify", "--suite", "paper-examples", "one-loop", "lift", "--r", "5", "7")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert set(report["suites"]) == {"paper-examples", "one-loop", "lift"}
    assert json.loads((tmp_path / "verify-report.json").read_text()) == report


def test_verify_exit_one_on_failure(capsys, monkeypatch):
    monkeypatch.setitem(checks.SUITES, "series", lambda params, **_: [CheckResult("broken", False)])
    code, out, _ = run(capsys, "verify", "--suite", "series", "--format", "text")
    assert code == 1
    assert out.startswith("FAIL")


def test_verify_json_is_deterministic(capsys):
    a = run(capsys, "verify", "--suite", "series", "degree")[1]
    b = run(capsys, "verify", "--suite", "series", "degree")[1]
    assert a == b


def test_out_file(capsys, tmp_path):
    target = tmp_path / "x.json"
    code, out, _ = run(capsys, "expand", "--e-max", "1", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["e_max"] == 1
