import json

import numpy as np
import pytest

from lamecurve import default_context
from lamecurve.cli import main, parse_complex, run
from lamecurve.errors import ValidationError


def _doc(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize(
    "text, value",
    [("0.1+1.1i", 0.1 + 1.1j), ("0.123-0.057i", 0.123 - 0.057j), ("2", 2), ("1.5i", 1.5j), ("-i", -1j), ("1e-3+2e-1i", 0.001 + 0.2j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "1 + 2i", "abc", "1+2j", "i1", "1+2i+3i", "nan+i"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValidationError):
        parse_complex(text)


def test_coeffs_ell1(capsys):
    code, out = _doc(capsys, ["coeffs", "--ell", "1"])
    d = json.loads(out)
    assert code == 0
    assert d["schema"] == "lamecurve/1"
    assert np.allclose(d["C"], [[1, 0], [1, 0]])


def test_coeffs_ell2_ratio(capsys):
    code, out = _doc(capsys, ["coeffs", "--ell", "2"])
    C = [complex(*c) for c in json.loads(out)["C"]]
    ctx = default_context(2)
    assert abs(C[1] / C[0] - ctx.num(3) / ctx.num(1)) < 1e-9


def test_coeffs_ell4_length(capsys):
    code, out = _doc(capsys, ["coeffs", "--ell", "4"])
    assert code == 0 and len(json.loads(out)["C"]) == 11


@pytest.mark.parametrize("ell, n", [(1, 6), (2, 10)])
def test_edges_both(capsys, ell, n):
    code, out = _doc(capsys, ["edges", "--ell", str(ell), "--method", "both"])
    d = json.loads(out)
    assert code == 0
    assert len(d["bloch"]) == len(d["hyper"]) == n
    assert d["discrepancy"] < 1e-6


def test_edges_csv(capsys, tmp_path):
    path = tmp_path / "edges.csv"
    assert main(["edges", "--ell", "1", "--format", "csv", "--out", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "re,im,method"
    assert len(lines) == 13


def test_edges_mismatch_exit_code(capsys):
    code, _ = _doc(capsys, ["edges", "--ell", "1", "--match-tol", "1e-16"])
    assert code == 2


def test_hyper(capsys):
    code, out = _doc(capsys, ["hyper", "--ell", "2"])
    d = json.loads(out)
    assert code == 0
    assert d["T_top_odd"] and d["D_even"]
    assert d["P_degree"] == 5


def test_bloch(capsys):
    code, out = _doc(capsys, ["bloch", "--ell", "1", "--zeta", "0.31+0.2i"])
    d = json.loads(out)
    assert code == 0
    assert len(d["points"]) == 2
    for p in d["points"]:
        assert max(p["residuals"].values()) < 1e-8


def test_bloch_ell2_size(capsys):
    code, out = _doc(capsys, ["bloch", "--ell", "2"])
    assert code == 0 and len(json.loads(out)["points"]) == 6


def test_deterministic(capsys):
    _, a = _doc(capsys, ["bloch", "--ell", "2", "--seed", "7"])
    _, b = _doc(capsys, ["bloch", "--ell", "2", "--seed", "7"])
    assert a == b


def test_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("LAMECURVE_SEED", "9")
    _, out = _doc(capsys, ["coeffs"])
    assert json.loads(out)["config"]["seed"] == 9
    monkeypatch.setenv("LAMECURVE_SEED", "x")
    assert main(["coeffs"]) == 1


def test_verify_algebra_rows(capsys):
    code, out = _doc(capsys, ["verify", "--ell", "2", "--suite", "algebra"])
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert code == 0
    for key in ("sklyanin_relation_1", "baxter_operator", "wronskian", "x_lambda_symmetry", "intertwining_spin_2"):
        assert key in names


def test_verify_all_ell1(capsys):
    code, out = _doc(capsys, ["verify", "--ell", "1", "--suite", "all"])
    d = json.loads(out)
    assert code == 0
    assert d["passed"]
    assert all(np.isfinite(c["residual"]) for c in d["checks"])


@pytest.mark.parametrize(
    "argv",
    [
        ["coeffs", "--eta", "0.25"],
        ["coeffs", "--tau", "1.1"],
        ["coeffs", "--ell", "0"],
        ["coeffs", "--eta", "nope"],
        ["hyper", "--format", "csv"],
        ["frobnicate"],
    ],
)
def test_invalid_input_exit_1(capsys, argv):
    assert main(argv) == 1


def test_pole_zeta_exit_2(capsys):
    code, doc = run(["bloch", "--ell", "1", "--zeta", "0"])
    assert code == 2
    assert "error" in doc or not doc["passed"]


def test_timing_opt_in(capsys):
    _, out = _doc(capsys, ["coeffs"])
    assert "timing" not in json.loads(out)
    _, out = _doc(capsys, ["coeffs", "--timing"])
    assert "timing" in json.loads(out)
