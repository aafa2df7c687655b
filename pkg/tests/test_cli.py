import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eiskron.cli import ConfigError, format_phi_table, main, parse_phi_text
from eiskron.level import LevelFunction

PHI = "# test data\n0 1 1/2\n1 2 -3\n\n2 0 2   # trailing comment\n"


@pytest.fixture
def phi_file(tmp_path):
    path = tmp_path / "phi.txt"
    path.write_text(PHI)
    return str(path)


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_phi_text():
    phi = parse_phi_text(PHI, 3)
    assert phi == LevelFunction.from_dict(3, {(0, 1): Fraction(1, 2), (1, 2): -3, (2, 0): 2})
    for bad in ("0 1", "3 0 1", "0 0 x", "0 0 1\n0 0 2"):
        with pytest.raises(ConfigError):
            parse_phi_text(bad, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 6).flatmap(lambda N: st.tuples(
    st.just(N),
    st.lists(st.builds(Fraction, st.integers(-30, 30), st.integers(1, 9)), min_size=N * N, max_size=N * N))))
def test_phi_table_round_trip(data):
    N, values = data
    phi = LevelFunction(N, values)
    assert parse_phi_text(format_phi_table(phi), N) == phi


def test_fourier_origin_delta(capsys, tmp_path):
    path = tmp_path / "d.txt"
    path.write_text("0 0 1\n")
    code, out, _ = run(capsys, "fourier", "--level", "3", "--phi", str(path), "--transform", "p1")
    assert code == 0
    body = json.loads(out)
    # P1 delta_(0,0)(m, n) = [n = 0]
    assert [c[0] for c in body["coeffs"]] == ["1", "0", "0"] * 3


def test_fourier_writes_reparsable_phi_file(capsys, phi_file):
    code, out, _ = run(capsys, "fourier", "--level", "3", "--phi", phi_file,
                       "--transform", "transpose", "--format", "phi")
    assert code == 0
    assert parse_phi_text(out, 3) == LevelFunction.from_dict(3, {(1, 0): Fraction(1, 2), (2, 1): -3, (0, 2): 2})
    code, _, err = run(capsys, "fourier", "--level", "3", "--phi", phi_file, "--format", "phi")
    assert code == 2 and "rational" in err


def test_eis_p_of_zero_is_zero(capsys, tmp_path):
    path = tmp_path / "zero.txt"
    path.write_text("# nothing\n")
    code, out, _ = run(capsys, "eis-p", "--p", "7", "--level", "4", "--weight", "2", "--moment", "-2",
                       "--q-prec", "6", "--phi", str(path))
    assert code == 0
    body = json.loads(out)
    assert body["meta"] == {"p": 7, "N": 4, "k": 2, "r": -2, "q_prec": 6, "p_prec": 6, "g": "1,0;0,1"}
    assert body["coeffs"] == [["0", "0"]] * 7


def test_verify_main_theorem(capsys, phi_file):
    code, out, _ = run(capsys, "verify-main-theorem", "--p", "5", "--level", "3", "--weight", "1",
                       "--q-prec", "40", "--p-prec", "6", "--phi", phi_file)
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_suite_csv(capsys, phi_file):
    code, out, _ = run(capsys, "verify-suite", "--p", "7", "--level", "3", "--weight", "2",
                       "--g", "0,2;1,0", "--phi", phi_file, "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["check", "status"]
    assert {r[1] for r in rows[1:]} == {"PASS"} and len(rows) == 8


def test_csv_series_layout(capsys, phi_file):
    code, out, _ = run(capsys, "eis", "--level", "3", "--weight", "1", "--q-prec", "5",
                       "--phi", phi_file, "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["n", "coeff_0", "coeff_1"]
    assert [r[0] for r in rows[1:]] == [str(n) for n in range(6)]
    assert all(Fraction(x) is not None for r in rows[1:] for x in r[1:])


def test_measure_commands(capsys, phi_file):
    args = ["--p", "5", "--level", "3", "--weight", "1", "--q-prec", "10", "--phi", phi_file]
    code, out, _ = run(capsys, "measure-moments", "--moment", "2", *args)
    assert code == 0 and [m["r"] for m in json.loads(out)["moments"]] == [0, 1, 2]
    code, out, _ = run(capsys, "measure-integrality", "--moment", "6", *args)
    assert code == 0 and all(x["passed"] for x in json.loads(out)["records"])
    code, out, _ = run(capsys, "measure-support", *args)
    assert code == 0 and json.loads(out)["vanishes"] is True


def test_alpha_and_values(capsys, phi_file):
    code, out, _ = run(capsys, "alpha", "--p", "7", "--level", "3", "--weight", "2", "--q-prec", "5",
                       "--phi", phi_file)
    assert code == 0 and len(json.loads(out)["slots"]) == 3
    code, out, _ = run(capsys, "horospherical", "--level", "3", "--weight", "2", "--phi", phi_file)
    assert code == 0 and Fraction(json.loads(out)["value"]) is not None
    code, out, _ = run(capsys, "lvalue", "--level", "3", "--weight", "0", "--phi", phi_file)
    # L(phi, 0) with phi(0, .) = (0, 1/2, 0): -(1/2) B_1(1/3) = 1/12
    assert code == 0 and json.loads(out)["value"] == ["1/12"]


@pytest.mark.parametrize("args,needle", [
    (["eis-p", "--p", "5", "--level", "3", "--weight", "3"], "p > k + 2"),
    (["eis-p", "--p", "3", "--level", "6"], "divides"),
    (["eis-p", "--p", "9", "--level", "4"], "odd prime"),
    (["eis-p", "--level", "4"], "needs --p"),
    (["eis", "--level", "4", "--g", "2,0;0,2"], "not invertible"),
    (["eis", "--level", "2"], "level"),
    (["eis", "--level", "4", "--q-prec", "0"], "prec"),
])
def test_configuration_errors(capsys, phi_file, args, needle):
    code, out, err = run(capsys, *args, "--phi", phi_file)
    assert code == 2 and out == "" and needle in err


def test_missing_phi_file(capsys, tmp_path):
    code, _, err = run(capsys, "eis", "--level", "3", "--phi", str(tmp_path / "missing.txt"))
    assert code == 2 and "cannot read" in err


def test_argparse_errors_exit_two(capsys):
    assert main(["eis"]) == 2
    assert main(["no-such-command"]) == 2


def test_failed_verification_exits_one(capsys, phi_file, monkeypatch):
    import eiskron.cli as cli
    from eiskron.symh import SyntomicReport, Residual

    monkeypatch.setattr(cli, "_main_theorem",
                        lambda cfg, phi, g: SyntomicReport(False, (Residual(1, 3, 5),), 6, 10))
    code, out, _ = run(capsys, "verify-main-theorem", "--p", "5", "--level", "3", "--phi", phi_file)
    assert code == 1
    assert json.loads(out)["residuals"] == [{"slot": 1, "q_power": 3, "valuation": 5}]


def test_output_is_deterministic(tmp_path, phi_file):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}.json"
        assert main(["alpha", "--p", "7", "--level", "3", "--weight", "1", "--q-prec", "8",
                     "--phi", phi_file, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0]


def test_module_entry_point(phi_file):
    proc = subprocess.run([sys.executable, "-m", "eiskron", "eis", "--level", "3", "--q-prec", "3",
                           "--phi", phi_file], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["command"] == "eis"
