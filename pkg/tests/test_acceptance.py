"""Acceptance criteria, one test each.

Every test prints a PASS/FAIL line (visible with ``-s``); the terminal summary
repeats them under "acceptance criteria" whatever the capture mode.
"""

import itertools
import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest
from click.testing import CliRunner

from qeuler.characters import char_quadratic, char_trivial
from qeuler.classical import euler_generalized
from qeuler.cli import main
from qeuler.core import QEulerParams, verify_thm4_first
from qeuler.fermionic import PadicContext, fermionic_sum_poly, padic_valuation
from qeuler.verify import exit_code, load_grid, run_identity

criterion = pytest.mark.criterion


def report_line(number, ok, detail=""):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def verdicts(report):
    return {v["name"]: v for v in report["verdicts"]}


def all_asserted_hold(report):
    return all(v["holds"] for v in report["verdicts"] if v.get("asserted"))


@pytest.fixture(scope="module")
def default_report():
    cache = {}

    def get(identity, **overrides):
        key = (identity, tuple(sorted((k, str(v)) for k, v in overrides.items())))
        if key not in cache:
            cache[key] = run_identity(identity, load_grid("default", identity, **overrides))
        return cache[key]

    return get


@criterion(1, "Witt formula: alternating sums of j^n match E_n for n <= 8, p in {3,5}, N = M+2, M <= 4")
def test_criterion_01_classical_witt():
    failures = []
    for p, M, n in itertools.product((3, 5), range(1, 5), range(9)):
        N = M + 2
        value = euler_generalized(n, char_trivial(1)).to_rational()
        # exact integer sum first, then the vectorised mod p^M path
        exact = sum((-1) ** j * j**n for j in range(p**N))
        v = padic_valuation(exact - value, p)
        fast = fermionic_sum_poly([0] * n + [1], PadicContext(p, M, N))
        if v < M or not fast.matches(value.numerator * pow(value.denominator, -1, p**M)):
            failures.append((p, M, n, v))
    report_line(1, not failures, f"{len(failures)} failures")
    assert not failures


@criterion(2, "Multivariate Witt, k=2: fermionic_sum_multi = E^{(2)}_{n,chi}(x) mod p^M")
def test_criterion_02_multivariate_witt(default_report):
    report = default_report("witt_classical", k=[2])
    v = verdicts(report)["witt_classical"]
    assert {r["k"] for r in report["results"]} == {2}
    assert max(r["M"] for r in report["results"]) <= 3
    assert {r["d"] for r in report["results"]} == {1, 3}
    report_line(2, v["holds"], f"{v['points']} points, skipped {v['skipped']}")
    assert v["holds"] and v["points"] > 0


@criterion(3, "q-Witt, q = 1+p: closed forms are p-integral and equal the k-fold sums mod p^M")
def test_criterion_03_q_witt(default_report):
    report = default_report("witt_q")
    rows = report["results"]
    integral = all(r.get("oracle") is not None for r in rows)
    v = verdicts(report)["witt_q"]
    assert max(r["k"] for r in rows) == 2 and max(r["integrand"]["n"] for r in rows) == 3
    assert {r["integrand"]["q"] - r["p"] for r in rows} == {1}
    report_line(3, integral and v["holds"], f"{v['points']} points")
    assert integral and v["holds"]


@criterion(4, "Order-k closed form vs Abel-summed series within 1e-6 (1e-8 for k=1)")
def test_criterion_04_thm1_series(default_report):
    report = default_report("thm1_series")
    grid = report["grid"]
    assert grid["n"] == list(range(6)) and grid["k"] == [1, 2, 3] and grid["d"] == [1, 3]
    assert grid["x"] == [0, 1] and grid["q"] == ["1/2", "2/3"]
    assert grid["tol"] == 1e-6 and grid["tol_k1"] == 1e-8
    worst = max(float(r["residual"]) for r in report["results"])
    ok = all_asserted_hold(report)
    report_line(4, ok, f"{len(report['results'])} points, worst residual {worst:.2e}")
    assert ok


@criterion(5, "(h,k) closed form vs series within 1e-6; exactly one Gaussian base reading holds")
def test_criterion_05_thm2_series(default_report):
    report = default_report("thm2_series")
    v = verdicts(report)
    assert report["grid"]["h"] == [0, 1, 2, 3]
    ok = v["gauss_base=q^d"]["holds"] and v["adjudication"]["holding"] == ["q^d"]
    report_line(5, ok, f"holding readings {v['adjudication']['holding']}, "
                       f"base q fails at {v['gauss_base=q']['failures']}/{v['gauss_base=q']['points']}")
    assert ok


@criterion(6, "Moment identity: moment_lhs = moment_rhs exactly, all characters mod 1, 3, 5")
def test_criterion_06_thm3(default_report):
    report = default_report("thm3")
    grid = report["grid"]
    assert grid["d"] == [1, 3, 5] and grid["x"] == [0, 1, 2] and grid["m"] == list(range(5))
    chis = {r["params"]["chi"] for r in report["results"]}
    assert len(chis) == 1 + 2 + 4
    ok = all(r["residual"] == "0/1" for r in report["results"])
    report_line(6, ok, f"{len(report['results'])} points")
    assert ok and verdicts(report)["thm3"]["holds"]


@criterion(7, "Raising-h recurrence: residual exactly 0")
def test_criterion_07_thm4_second(default_report):
    report = default_report("thm4_second")
    grid = report["grid"]
    assert grid["n"] == list(range(6)) and grid["h"] == [0, 1, 2, 3] and grid["d"] == [1, 3, 5]
    ok = all(r["residual"] == "0/1" for r in report["results"])
    report_line(7, ok, f"{len(report['results'])} points")
    assert ok


@criterion(8, "Shift-by-d recurrence: d=1 residual 0; for d=3 quadratic exactly one printed reading holds")
def test_criterion_08_thm4_first(default_report):
    readings = ("as_printed", "shifted_arg")
    grid = itertools.product(range(6), (2, 3), range(4), range(3), (Fraction(1, 2), Fraction(2, 3)))
    d1_zero = True
    holds_d3 = dict.fromkeys(readings, True)
    for n, k, h, x, q in grid:
        for chi in (char_trivial(1), char_quadratic(3)):
            checks = verify_thm4_first(QEulerParams(n=n, k=k, h=h, chi=chi, q=q, x=x))
            for name in readings:
                zero = not checks[name].residual
                if chi.d == 1:
                    d1_zero &= zero
                else:
                    holds_d3[name] &= zero
    holding = [name for name in readings if holds_d3[name]]
    named = verdicts(default_report("thm4_first"))["adjudication"]["holding"]
    ok = d1_zero and len(holding) == 1 and holding[0] in named
    report_line(8, ok, f"d=1 zero: {d1_zero}; d=3 readings with zero residual: {holding}; "
                       f"report names {named}")
    assert d1_zero
    assert len(holding) == 1, f"readings with identically zero residual for d=3: {holding}"
    assert holding[0] in named


@criterion(9, "Shift identity: residual valuation >= M at N = M+2 and non-decreasing over N in {2,3,4}")
def test_criterion_09_shift(default_report):
    report = default_report("eq3_shift")
    v = verdicts(report)
    grid = report["grid"]
    assert max(len(poly) for poly in grid["polys"]) == 4
    assert grid["shifts"] == [1, 2, 3, 4] and grid["p"] == [3, 5] and grid["levels"] == [2, 3, 4]
    ok = v["eq3_shift"]["holds"] and v["valuation_nondecreasing"]["holds"]
    report_line(9, ok, f"{v['eq3_shift']['points']} cases")
    assert ok


@criterion(10, "Specialization lattice: exact equality on the full grid")
def test_criterion_10_specialization(default_report):
    report = default_report("specialization")
    v = verdicts(report)
    ok = all(v[name]["holds"] for name in ("order_k_k1", "hk_kk", "hk_h1"))
    report_line(10, ok, f"{len(report['results'])} comparisons")
    assert ok


@criterion(11, "Classical limit: |E^{(k)}_{n,q}(x) - E^{(k)}_n(x)| <= C 10^-j at q = 1 +- 10^-j, j = 2..6")
def test_criterion_11_classical_limit(default_report):
    report = default_report("classical_limit")
    grid = report["grid"]
    assert grid["j"] == [2, 3, 4, 5, 6] and grid["n"] == list(range(6)) and grid["k"] == [1, 2, 3]
    bad = [r["params"] for r in report["results"] if r["verdict"] != "pass"]
    for r in report["results"]:
        C = float(r["C"])
        assert math.isfinite(C)
        for key, err in r["errors"].items():
            assert float(err) <= C * 10.0 ** -int(key[1:])
    report_line(11, not bad, f"{len(report['results'])} (n, k, x) cases")
    assert not bad


@criterion(12, "CLI determinism and exit-code contract")
def test_criterion_12_cli(tmp_path):
    cmd = [sys.executable, "-m", "qeuler.cli", "verify", "--identity", "thm3", "--grid", "default"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    report = json.loads(first.stdout)
    assert exit_code(report) == 0
    assert set(report) == {"identity", "grid", "results", "verdicts"}

    runner = CliRunner()
    assert runner.invoke(main, ["compute", "--d", "4", "--q", "1/2"]).exit_code == 2
    assert runner.invoke(main, ["compute", "--q", "1"]).exit_code == 2
    assert runner.invoke(main, ["verify", "--identity", "thm4_first", "--grid", "quick"]).exit_code == 0
    cfg = tmp_path / "g.toml"
    cfg.write_text('version = 1\n[bad.base]\nn = [1]\nk = [1]\nd = [1]\nx = [0]\nq = ["1/2"]\ntol_k1 = -1.0\n')
    failing = runner.invoke(main, ["verify", "--identity", "thm1_series", "--grid", "bad", "--config", str(cfg)])
    assert failing.exit_code == 3
    report_line(12, True, f"{len(first.stdout)} identical bytes")
