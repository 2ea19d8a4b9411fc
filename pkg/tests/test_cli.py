import json
import os
import shutil
from pathlib import Path

import pytest

from pseudobialg.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
GOLDEN = Path(__file__).resolve().parent / "golden"

WORKED = {
    "check_L_1": ["check", "L_1.pbd"],
    "coboundary_L_1": ["coboundary", "L_1.pbd"],
    "double_zero": ["double", "zero.pbd"],
}


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    for path in SAMPLES.glob("*.pbd"):
        shutil.copy(path, tmp_path / path.name)
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(capsys, argv):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, out, json.loads(out)


def well_formed(report):
    assert set(report) <= {"command", "instance", "checks", "artifacts", "error"}
    assert {"command", "instance", "checks", "artifacts"} <= set(report)
    for c in report["checks"]:
        assert set(c) <= {"name", "pass", "witness"} and isinstance(c["pass"], bool)
        if c["pass"]:
            assert "witness" not in c


@pytest.mark.parametrize("name", list(WORKED))
def test_worked_examples_are_byte_stable(name, workdir, capsys):
    code, first, report = run(capsys, WORKED[name])
    _, second, _ = run(capsys, WORKED[name])
    assert first == second
    well_formed(report)
    golden = GOLDEN / f"{name}.json"
    if os.environ.get("PSEUDOBIALG_REGEN"):
        golden.write_text(first)
    assert first == golden.read_text()
    assert code == (0 if all(c["pass"] for c in report["checks"]) else 1)


def test_check_all_green(workdir, capsys):
    for sample in ("L_1", "L_D", "zero", "cur_t2", "nonabelian"):
        code, _, report = run(capsys, ["check", f"{sample}.pbd", "--conformal"])
        assert code == 0, report
    code, _, report = run(capsys, ["check", "cur_t2.pbd", "--coalgebra", "--cocycle"])
    assert code == 0 and [c["name"] for c in report["checks"]] == ["lie_axioms", "coalgebra", "cocycle"]


def test_double_zero_artifact(workdir, capsys):
    code, _, report = run(capsys, ["double", "zero.pbd"])
    assert code == 0
    assert report["artifacts"] == ["zero.double.pbd"]
    text = (workdir / "zero.double.pbd").read_text()
    assert "rank = 2" in text and "r = 1 (1 | 1) 1 2" in text


def test_dualize_and_reuse(workdir, capsys):
    code, _, report = run(capsys, ["dualize", "L_D.pbd", "--out", "dual.pbd"])
    assert code == 0 and report["artifacts"] == ["dual.pbd"]
    code, _, report = run(capsys, ["check", "dual.pbd", "--coalgebra"])
    assert code == 0


def test_coboundary_witness(workdir, capsys):
    code, _, report = run(capsys, ["coboundary", "L_1.pbd"])
    checks = {c["name"]: c for c in report["checks"]}
    assert checks["invariance"]["pass"] and checks["cybe_mod"]["pass"]
    # the file holds δ_D, while d(1⊗_H r) is its negative
    assert not checks["delta_matches_cobracket"]["pass"]
    assert checks["delta_matches_cobracket"]["witness"].startswith("label 2:")
    assert code == 1


def test_failing_check_exit_one(workdir, capsys):
    Path("broken.pbd").write_text("[lie_algebra]\ndim = 1\n[pseudoalgebra]\nrank = 1\nbracket 1 1 = 1 (1 | 1) 1\n")
    code, _, report = run(capsys, ["check", "broken.pbd"])
    assert code == 1
    well_formed(report)
    assert report["checks"][0]["witness"]


@pytest.mark.parametrize("argv,fragment", [
    (["check", "L_1.pbd", "--cutoff", "3"], "only apply to annihilate"),
    (["dualize", "L_1.pbd", "--conformal"], "only apply to check"),
    (["check", "L_1.pbd", "--out", "x.pbd"], "--out is not accepted"),
    (["check", "L_1.pbd", "--sample-degree", "3"], "needs --conformal"),
    (["check", "L_D.pbd", "--coalgebra"], "needs a [cobracket] section"),
    (["coboundary", "L_D.pbd"], "needs a [r] section"),
    (["check", "missing.pbd"], "No such file"),
    (["annihilate", "L_D.pbd", "--pairs", "5:1*2:2", "--cutoff", "4"], "rerun with --cutoff 7"),
    (["annihilate", "L_D.pbd", "--pairs", "1:3*0:1"], "undeclared basis label 3"),
])
def test_errors_exit_two(workdir, capsys, argv, fragment):
    code, _, report = run(capsys, argv)
    assert code == 2
    well_formed(report)
    assert fragment in report["error"]
    assert report["checks"] == [] or all(isinstance(c["pass"], bool) for c in report["checks"])


def test_parse_error_exit_two(workdir, capsys):
    Path("bad.pbd").write_text("[lie_algebra]\ndim = 1\n")
    code, _, report = run(capsys, ["check", "bad.pbd"])
    assert code == 2 and report["error"] == "missing section [pseudoalgebra]"


def test_annihilate_pairs(workdir, capsys):
    code, _, report = run(capsys, ["annihilate", "cur_t2.pbd", "--pairs", "2:1*3:2"])
    assert code == 0
    table = Path(report["artifacts"][0]).read_text()
    assert table == "[2:1, 3:2] = (1*t(5,))⊗a2\n"


def test_text_format(workdir, capsys):
    assert main(["check", "L_1.pbd"]) == 0
    assert capsys.readouterr().out == "check L_1\n  lie_axioms: pass\n"
