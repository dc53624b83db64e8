import json
import subprocess
import sys

import pytest

from maassclass.cli import RunConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out.strip() else None), err


def test_forms(capsys):
    code, js, _ = run_json(capsys, "forms", "--disc", "-15", "--primitive")
    assert code == 0 and js["schema"] == 1
    assert js["forms"] == [[1, 1, 4], [2, 1, 2]] and js["class_number"] == 2
    code, js, _ = run_json(capsys, "forms", "--disc", "-4")
    assert js["forms"] == [[1, 0, 1]] and js["class_number"] == 1
    code, js, err = run_json(capsys, "forms", "--disc", "-5")
    assert code == 2 and js is None and "error" in err


def test_forms_lists_imprimitive(capsys):
    code, js, _ = run_json(capsys, "forms", "--disc", "-12")
    assert [2, 2, 2] in js["forms"] and js["class_number"] == 1


def test_classpoly(capsys):
    code, js, _ = run_json(capsys, "classpoly", "--form", "E10/Delta", "--disc", "-15")
    assert code == 0
    assert js["polynomial"]["coefficients"] == ["9890505", "-176625", "1"]
    assert js["irreducibility"]["verdict"] == "irreducible"
    assert js["splitting_field"] == 5
    assert float(js["polynomial"]["recognition_report"]["max_round_distance"]) < 1e-15
    code, js, _ = run_json(capsys, "classpoly", "--form", "E4^3/Delta", "--disc", "-4")
    assert code == 0 and js["polynomial"]["expression"] == "x - 1728"


def test_classpoly_text(capsys):
    code, out, _ = run(capsys, "classpoly", "--form", "E10/Delta", "--disc", "-15", "--format", "text")
    assert code == 0
    assert "x^2 - 176625*x + 9890505" in out and "sqrt(5)" in out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["classpoly", "--form", "E4", "--disc", "-4"], 3),
        (["classpoly", "--form", "1/E4", "--disc", "-4"], 3),
        (["classpoly", "--form", "E4*Delta", "--disc", "-4"], 3),
        (["classpoly", "--form", "E4 + E6", "--disc", "-4"], 2),
        (["classpoly", "--form", "E10/", "--disc", "-4"], 2),
        (["classpoly", "--form", "E10/Delta", "--disc", "-6"], 2),
        (["classpoly", "--form", "E10/Delta", "--disc", "-15", "--precision", "32"], 2),
        (["bound", "--form", "E10/Delta", "--disc", "-15", "--c", "1.0"], 2),
        (["bound", "--form", "E10/Delta", "--disc", "-12"], 2),
        (["verify-poincare", "--k", "0"], 2),
        (["nonsense"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, _ = run(capsys, *argv)
    assert got == code


def test_recognition_failure_exit_code(capsys):
    code, js, err = run_json(capsys, "classpoly", "--form", "E10/Delta", "--disc", "-15", "--trunc", "3")
    assert code == 4
    assert js["error"]["type"] in ("ImaginaryResidueTooLarge", "NoCloseRational")
    assert "polynomial" not in js


def test_bound(capsys):
    code, js, _ = run_json(capsys, "bound", "--form", "E10/Delta", "--disc", "-20", "--c", "1.5")
    rep = js["report"]
    assert code == 0 and rep["verdict_corollary"] is True
    assert abs(float(rep["corollary_threshold"]) - 4.45366) < 5e-5
    code, js, _ = run_json(capsys, "bound", "--form", "E10/Delta", "--disc", "-15")
    assert js["report"]["verdict_corollary"] is False and js["report"]["verdict_theorem"] is False


def test_bound_sweep(capsys):
    code, js, _ = run_json(capsys, "bound-sweep", "--form", "E10/Delta", "--dmax", "60")
    assert code == 0
    assert js["theorem_crossover"] == -19 and js["corollary_crossover"] == -20


def test_verify_poincare(capsys):
    code, js, _ = run_json(capsys, "verify-poincare", "--n", "2", "--k", "1", "--lmax", "3", "--cmax", "200")
    assert code == 0 and js["all_pass"] and len(js["rows"]) == 2 * 4
    code, js, _ = run_json(capsys, "verify-poincare", "--cmax", "1")
    assert code == 0 and js["all_pass"]


def test_determinism_and_threads(capsys, monkeypatch):
    argv = ["classpoly", "--form", "E10/Delta", "--disc", "-47"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--seed", "0")
    _, c, _ = run(capsys, *argv, "--threads", "4")
    monkeypatch.setenv("MAASSCLASS_THREADS", "3")
    _, d, _ = run(capsys, *argv)
    assert a == b == c == d


def test_json_numbers_are_strings(capsys):
    _, js, _ = run_json(capsys, "forms", "--disc", "-23")
    assert all(isinstance(p["re"], str) and isinstance(p["im"], str) for p in js["cm_points"])


def test_run_config_defaults_match_library():
    from maassclass.evaluator import EvalConfig

    assert RunConfig().eval_config == EvalConfig()


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "maassclass", "forms", "--disc", "-3"], capture_output=True, text=True, check=True
    )
    assert json.loads(out.stdout)["forms"] == [[1, 1, 1]]
