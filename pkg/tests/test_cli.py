import json
from importlib import resources

import jsonschema
import pytest

from legbound.bounds import coeff_bound_hco
from legbound.cli import main, parse_range


@pytest.fixture(scope="module")
def schema():
    text = resources.files("legbound").joinpath("schemas/output.schema.json").read_text()
    return json.loads(text)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("2..5") == [2, 3, 4, 5]


def test_coeffs_x(capsys):
    code, out, _ = run(capsys, "coeffs", "--func", "x", "--n-max", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,a_n"
    vals = [float(line.split(",")[1]) for line in lines[1:]]
    assert vals == pytest.approx([0, 1, 0, 0], abs=1e-13)


def test_coeffs_exp_single_row(capsys):
    code, out, _ = run(capsys, "coeffs", "--func", "exp(x)", "--n-max", "0")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert float(lines[1].split(",")[1]) == pytest.approx(1.1752012, rel=1e-7)


def test_coeffs_fj_below_hco(capsys):
    code, out, _ = run(capsys, "coeffs", "--builtin", "fj", "--j", "3", "--t", "0", "--n-max", "10")
    assert code == 0
    for line in out.splitlines()[1:]:
        n, a = line.split(",")
        n = int(n)
        if n >= 4:
            assert abs(float(a)) <= coeff_bound_hco(n, 3, 2.0)


def test_parse_error_exit_2(capsys):
    code, out, err = run(capsys, "compare", "--func", "exp(x", "--N", "5", "--r", "1")
    assert code == 2
    assert out == ""
    assert "byte offset 5" in err


def test_usage_errors(capsys):
    assert run(capsys, "tables", "--which", "3")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "coeffs", "--func", "x", "--n-max", "3", "--bogus")[0] == 2
    assert run(capsys, "coeffs", "--builtin", "fj", "--n-max", "3")[0] == 2
    assert run(capsys, "verify", "--lemma", "key", "--n", "5..2")[0] == 2
    assert run(capsys, "coeffs", "--func", "x", "--n-max", "3", "--tol", "1e-20")[0] == 2


def test_cap_is_usage_error(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "key", "--n", "30", "--r-max", "2")
    assert code == 2 and out == ""


def test_numerical_failure_exit_3(capsys):
    # not integrable: adaptive bisection exhausts its depth at the pole
    code, out, err = run(capsys, "coeffs", "--func", "1/(x - 0.1234)", "--n-max", "2")
    assert code == 3
    assert out == "" and "numerical failure" in err


def test_compare_examples(capsys):
    code, out, _ = run(capsys, "compare", "--builtin", "fj", "--j", "3", "--t", "0", "--N", "15", "--r", "3")
    assert code == 0
    row = next(line.split(",") for line in out.splitlines() if line.startswith("TruncThm2"))
    bound, measured = float(row[4]), float(row[5])
    assert measured <= bound <= 9.868e-4 * 1.5
    code, out, _ = run(capsys, "compare", "--func", "exp(x)", "--N", "10", "--r", "2")
    assert code == 0
    assert all(line.endswith(",ok") for line in out.splitlines()[1:])


def test_soundness_breach_exit_4(capsys):
    # a false override makes the bound too small
    code, out, err = run(capsys, "compare", "--func", "exp(x)", "--N", "4", "--r", "1", "--override", "U:1=1e-12")
    assert code == 4
    assert out == ""
    assert "soundness breach" in err


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "key", "--n", "2..8", "--r-max", "4")
    assert code == 0 and ",status,fail," not in out
    code, out, _ = run(capsys, "verify", "--lemma", "s-closed", "--n", "2..40")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--lemma", "ll", "--n", "1..2")
    assert code == 0
    assert "status,violation" in out


def test_tables(capsys):
    code, out, _ = run(capsys, "tables", "--which", "1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 8
    code, out, _ = run(capsys, "tables", "--which", "2", "--format", "md")
    assert code == 0
    assert len(out.splitlines()) == 8


def test_bound_subcommand(capsys):
    code, out, _ = run(capsys, "bound", "--kind", "thm2", "--N", "15", "--r", "3", "--seminorm", "2")
    assert code == 0
    assert float(out.splitlines()[1].split(",")[4]) == pytest.approx(1.0369122476937e-3, rel=1e-12)
    code, out, _ = run(capsys, "bound", "--kind", "xiang", "--n", "3", "--r", "3", "--seminorm", "1")
    assert code == 0 and "inapplicable" in out
    assert run(capsys, "bound", "--kind", "thm2", "--r", "3", "--seminorm", "2")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["coeffs", "--func", "exp(x)", "--n-max", "4"],
        ["compare", "--func", "sin(3*x)", "--N", "6..7", "--r", "2"],
        ["bound", "--func", "exp(x)", "--n", "5", "--N", "5", "--r", "2"],
        ["verify", "--lemma", "ll", "--n", "1..3"],
        ["tables", "--which", "1"],
        ["tables", "--which", "2"],
    ],
)
def test_json_validates(capsys, schema, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), schema)


def test_deterministic_and_out_file(capsys, tmp_path):
    argv = ["compare", "--builtin", "fj", "--j", "5", "--t", "-0.3", "--N", "12", "--r", "4", "--format", "md"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    path = tmp_path / "out.md"
    code, out, _ = run(capsys, *argv, "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text() == first
