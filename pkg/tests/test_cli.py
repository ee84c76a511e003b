import json
import shutil
import subprocess

import pytest

from uphocore.cli import run
from uphocore.gallery import presentation


@pytest.fixture
def meet_only(tmp_path):
    path = tmp_path / "meet_only.mono"
    path.write_text(presentation("meet-only").to_text())
    return path


def _run(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_build_then_check_lattice_reports_missing_join(capsys, meet_only, tmp_path):
    poset = tmp_path / "p.json"
    code, _, _ = _run(capsys, "build", "--in", meet_only, "--depth", 6, "--out", poset)
    assert code == 0
    code, out, _ = _run(capsys, "check-lattice", "--in", poset)
    assert code == 1
    assert out.startswith("JoinMissing(") or out.startswith("JoinAmbiguity(")


def test_construct_dn_then_analyze(capsys, tmp_path):
    poset = tmp_path / "d3.json"
    assert _run(capsys, "construct", "dn", "--n", 3, "--depth", 4, "--out", poset)[0] == 0
    code, out, _ = _run(capsys, "analyze", "--in", poset)
    assert code == 0
    assert "rank series      1 + 3x + 7x^2 + 15x^3 + 31x^4" in out
    assert "product          1\n" in out


def test_structured_analysis_survives_a_round_trip(capsys, meet_only, tmp_path):
    code, direct, _ = _run(capsys, "analyze", "--in", meet_only, "--depth", 5, "--format", "structured")
    assert code == 0
    poset = tmp_path / "p.json"
    _run(capsys, "build", "--in", meet_only, "--depth", 5, "--out", poset)
    _, via_file, _ = _run(capsys, "analyze", "--in", poset, "--format", "structured")
    assert via_file == direct
    assert json.loads(direct)["depth"] == 5


def test_identical_invocations_identical_bytes(capsys, tmp_path):
    outs = []
    for _ in range(2):
        outs.append(_run(capsys, "construct", "mf", "--f", "1,1,2", "--depth", 4)[1])
    assert outs[0] == outs[1]


def test_check_cancel_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.mono"
    bad.write_text(presentation("non-cancellative").to_text())
    code, out, _ = _run(capsys, "check-cancel", "--in", bad, "--depth", 3)
    assert code == 1 and out.strip()
    good = tmp_path / "good.mono"
    good.write_text(presentation("atom-swap").to_text())
    code, out, _ = _run(capsys, "check-cancel", "--in", good, "--depth", 4)
    assert code == 0
    assert "Pass" in out


def test_check_upho(capsys, tmp_path):
    d = tmp_path / "d.json"
    _run(capsys, "construct", "dn", "--n", 2, "--depth", 4, "--out", d)
    assert _run(capsys, "check-upho", "--in", d, "--probe", 2)[0] == 0
    b = tmp_path / "b.json"
    _run(capsys, "construct", "bn", "--n", 2, "--out", b)
    assert _run(capsys, "check-upho", "--in", b, "--probe", 1)[0] == 1
    code, _, err = _run(capsys, "check-upho", "--in", b, "--probe", 5)
    assert code == 2 and "probe" in err


def test_core_and_iso(capsys, tmp_path):
    d = tmp_path / "d.json"
    b = tmp_path / "b.json"
    c = tmp_path / "core.json"
    _run(capsys, "construct", "dn", "--n", 2, "--depth", 4, "--out", d)
    _run(capsys, "construct", "bn", "--n", 2, "--out", b)
    assert _run(capsys, "core", "--in", d, "--out", c)[0] == 0
    code, out, _ = _run(capsys, "iso", "--in", c, "--in", b)
    assert code == 0 and "isomorphic" in out
    m = tmp_path / "m.json"
    _run(capsys, "construct", "mn", "--n", 3, "--out", m)
    assert _run(capsys, "iso", "--in", m, "--in", b)[0] == 1


def test_colorings_and_realize(capsys, tmp_path):
    b = tmp_path / "b.json"
    _run(capsys, "construct", "bn", "--n", 2, "--out", b)
    code, out, _ = _run(capsys, "colorings", "--in", b)
    assert code == 0 and out.startswith("4 pre-upho colorings")
    code, out, _ = _run(capsys, "realize", "--in", b, "--depth", 4, "--workers", 1)
    assert code == 0
    assert "distinct at depth  2" in out
    code, out, _ = _run(capsys, "realize", "--in", b, "--depth", 4, "--workers", 1, "--format", "structured")
    assert json.loads(out)["distinct_at_depth"] == 2


def test_dot_output(capsys, tmp_path):
    p = tmp_path / "f.json"
    _run(capsys, "construct", "mf", "--f", "2,1", "--depth", 3, "--out", p)
    code, out, _ = _run(capsys, "dot", "--in", p, "--colored")
    assert code == 0 and out.startswith("digraph") and "color=" in out


def test_construct_mono_format(capsys):
    code, out, _ = _run(capsys, "construct", "flambda", "--lambda", "2,1", "--format", "mono")
    assert code == 0 and out.startswith("gens:")
    assert _run(capsys, "construct", "bn", "--n", 2, "--format", "mono")[0] == 2


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["analyze", "--in", "/nonexistent.json"], "no such file"),
        (["construct", "dn", "--n", "2"], "--depth"),
        (["construct", "dn", "--n", "2", "--depth", "-1"], "non-negative"),
        (["iso"], "--in"),
        (["frobnicate"], ""),
        (["construct", "mf", "--f", "1,x", "--depth", "2"], ""),
    ],
)
def test_usage_errors_exit_2(capsys, argv, needle):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert needle in err


def test_malformed_inputs_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.mono"
    bad.write_text("gens: a b\nrel: ab = \n")
    code, _, err = _run(capsys, "build", "--in", bad, "--depth", 3)
    assert code == 2 and "error" in err
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert _run(capsys, "analyze", "--in", junk)[0] == 2


def test_word_cap_exceeded_exit_2(capsys, tmp_path):
    free = tmp_path / "free.mono"
    free.write_text("gens: a b c\n")
    code, _, err = _run(capsys, "build", "--in", free, "--depth", 8, "--word-cap", 50)
    assert code == 2 and "error" in err


def test_word_cap_environment_variable(capsys, tmp_path, monkeypatch):
    free = tmp_path / "free.mono"
    free.write_text("gens: a b c\n")
    monkeypatch.setenv("UPHOCORE_WORD_CAP", "50")
    assert _run(capsys, "build", "--in", free, "--depth", 8)[0] == 2


@pytest.mark.skipif(shutil.which("uphocore") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["uphocore", "construct", "chain", "--depth", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["depth"] == 2
