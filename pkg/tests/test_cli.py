import json

import pytest
from click.testing import CliRunner

from qeuler.cli import main


@pytest.fixture
def run():
    runner = CliRunner()
    return lambda *args: runner.invoke(main, list(args))


@pytest.mark.parametrize("args, out", [
    (("compute", "--which", "order_k", "--n", "0", "--k", "3", "--d", "1", "--q", "1/2", "--x", "0"), "1/1"),
    (("compute", "--which", "k1", "--n", "1", "--d", "1", "--q", "1/2", "--x", "0"), "-2/3"),
    (("compute", "--which", "classical", "--n", "3", "--d", "1", "--x", "0"), "1/4"),
    (("compute", "--which", "moment_lhs", "--m", "0", "--k", "2", "--q", "1/2"), "4/15"),
])
def test_compute(run, args, out):
    res = run(*args)
    assert res.exit_code == 0, res.output
    assert res.output.strip() == out


def test_compute_complex_value_is_json(run):
    res = run("compute", "--which", "k1", "--n", "1", "--d", "5", "--chi", "1", "--q", "1/2")
    assert res.exit_code == 0
    assert set(json.loads(res.output)) == {"m", "coeffs"}


@pytest.mark.parametrize("args", [
    ("compute", "--d", "4", "--q", "1/2"),
    ("compute", "--q", "1"),
    ("compute", "--which", "classical", "--n", "20"),
    ("compute", "--q", "a/b"),
    ("compute", "--which", "k1", "--k", "2", "--q", "1/2"),
])
def test_compute_invalid(run, args):
    assert run(*args).exit_code == 2


def test_table(run):
    res = run("table", "--which", "k1", "--n", "0..4", "--q", "1/2")
    lines = res.output.splitlines()
    assert res.exit_code == 0
    assert lines[0] == "n,h,k,d,x,q,value"
    assert len(lines) == 6
    assert lines[2].split(",")[-1] == "-2/3"


def test_table_normalization_rows(run):
    res = run("table", "--n", "0", "--k", "1..3", "--q", "1/2")
    assert [line.split(",")[-1] for line in res.output.splitlines()[1:]] == ["1/1"] * 3


def test_table_empty_and_json(run):
    res = run("table", "--n", "")
    assert res.exit_code == 0 and res.output == "n,h,k,d,x,q,value\n"
    res = run("table", "--n", "0,1", "--output", "json")
    assert [r["value"] for r in json.loads(res.output)] == ["1/1", "-2/3"]


def test_table_too_large(run):
    assert run("table", "--n", "0..999", "--k", "1..999").exit_code == 2


def test_verify(run, tmp_path):
    res = run("verify", "--identity", "thm4_first", "--grid", "quick")
    assert res.exit_code == 0
    out = tmp_path / "r.json"
    res = run("verify", "--identity", "thm3", "--grid", "quick", "--out", str(out))
    assert res.exit_code == 0
    report = json.loads(out.read_text())
    assert all(r["residual"] == "0/1" for r in report["results"])
    assert run("verify", "--identity", "thm3", "--grid", "missing").exit_code == 2


def test_verify_failure_exit_code(run, tmp_path):
    # no residual is below a negative tolerance
    cfg = tmp_path / "g.toml"
    cfg.write_text('version = 1\n[strict.base]\nn = [1]\nk = [1]\nd = [1]\nx = [0]\n'
                   'q = ["1/2"]\ntol_k1 = -1.0\n')
    res = run("verify", "--identity", "thm1_series", "--grid", "strict", "--config", str(cfg))
    assert res.exit_code == 3


def test_padic(run):
    res = run("padic", "--exp", "witt", "--p", "3", "--N", "4", "--M", "3", "--n", "1")
    rep = json.loads(res.output)
    assert rep["residue"] == 13 and rep["match"]
    rep = json.loads(run("padic", "--exp", "qwitt", "--p", "3", "--N", "3", "--k", "2", "--n", "2").output)
    assert rep["match"] is True
    rep = json.loads(run("padic", "--exp", "shift", "--p", "5", "--N", "3", "--f", "x^2", "--shift", "3").output)
    assert rep["valuation_floor"] >= rep["M"]


@pytest.mark.parametrize("args", [
    ("padic", "--exp", "witt", "--p", "3", "--N", "3", "--d", "3", "--chi", "quadratic"),
    ("padic", "--exp", "witt", "--p", "3", "--N", "3", "--d", "5", "--chi", "1"),
    ("padic", "--exp", "shift", "--p", "3", "--N", "3"),
    ("padic", "--exp", "shift", "--p", "3", "--N", "3", "--f", "y + 1"),
    ("padic", "--exp", "witt", "--p", "4", "--N", "3"),
])
def test_padic_invalid(run, args):
    assert run(*args).exit_code == 2


def test_deterministic_output(run):
    args = ("table", "--which", "hk", "--n", "0..3", "--k", "1,2", "--h", "0..2", "--d", "5", "--chi", "2",
            "--output", "json")
    assert run(*args).output == run(*args).output
