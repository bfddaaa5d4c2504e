import json

import pytest

from gslie.cli import main


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


def results(report):
    return {r["name"]: r for r in report["results"]}


def test_schema(tmp_path):
    code, report = run(tmp_path, "algebra")
    assert code == 0
    assert set(report) == {"command", "config", "results", "discrepancies", "status"}
    assert all(set(r) == {"name", "verdict", "detail"} for r in report["results"])
    assert report["status"] == "ok"


def test_check_symmetries_default(tmp_path):
    code, report = run(tmp_path, "check-symmetries")
    assert code == 0 and report["status"] == "ok"
    names = " ".join(results(report))
    for label in ("X1", "X2", "X3", "X4", "X5[psi=t]", "X5[psi=x^2]", "X5[psi=x^2*t]"):
        assert label in names


def test_exp_candidate(tmp_path):
    code, report = run(tmp_path, "check-symmetries", "--F", "exp(2*u)", "--G", "exp(u)", "--candidate", "x,t,-2")
    assert code == 0 and report["status"] == "ok"


def test_partial_x_candidate(tmp_path, capsys):
    code, report = run(tmp_path, "check-symmetries", "--candidate", "1,0,0")
    assert code == 1 and report["status"] == "mismatch"
    assert "u_x" in capsys.readouterr().out


def test_tables(tmp_path, capsys):
    code, report = run(tmp_path, "tables")
    assert code == 0
    text = capsys.readouterr().out
    assert "[X2,X4] = X4" in text
    assert "[X1,X4] = X2 + 1/2*X3" in text
    cites = [d["cite"] for d in report["discrepancies"]]
    assert any("commutator table" in c and "X1" in c and "X4" in c for c in cites)
    assert all(d["printed"] and d["computed"] for d in report["discrepancies"])


def test_algebra_summary(tmp_path, capsys):
    run(tmp_path, "algebra")
    text = capsys.readouterr().out
    assert "span{X3}" in text
    assert "4, 3, 3" in text


@pytest.mark.parametrize("coeffs, cls", [
    (("0", "0", "1", "0"), "X3"),
    (("0", "1", "0", "0"), "X2"),
    (("1", "2", "3", "4"), "aX1+bX2+X4"),
])
def test_classify(tmp_path, capsys, coeffs, cls):
    code, report = run(tmp_path, "classify", *coeffs)
    assert code == 0
    assert cls in capsys.readouterr().out


def test_classify_printed_structure(tmp_path, capsys):
    code, _ = run(tmp_path, "classify", "1", "2", "3", "4", "--structure", "printed")
    assert code == 0
    assert "9/4" in capsys.readouterr().out


def test_classify_zero_vector(tmp_path):
    code, report = run(tmp_path, "classify", "0", "0", "0", "0")
    assert code == 2 and report is None


def test_verify_solutions(tmp_path):
    code, report = run(tmp_path, "verify-solutions")
    assert code == 0 and report["status"] == "ok"
    rows = results(report)
    assert any(k.startswith("S5p") and v["verdict"].startswith("fail") for k, v in rows.items())


@pytest.mark.parametrize("argv, code", [
    (("specfun", "shi", "0"), 0),
    (("specfun", "besselj1", "1"), 0),
    (("specfun", "bessely1", "-1"), 2),
    (("specfun", "nosuch", "1"), 2),
])
def test_specfun(tmp_path, argv, code):
    assert run(tmp_path, *argv)[0] == code


def test_determining(tmp_path):
    code, report = run(tmp_path, "determining")
    assert code == 0
    assert report["discrepancies"]


@pytest.mark.parametrize("argv", [
    ("tables",),
    ("check-symmetries",),
    ("verify-solutions", "--seed", "4"),
    ("classify", "1", "2", "3", "4"),
])
def test_deterministic_json(tmp_path, argv):
    run(tmp_path, *argv, name="a.json")
    run(tmp_path, *argv, name="b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


@pytest.mark.parametrize("config, code", [
    ({"seed": 3, "samples": 50}, 0),
    ({"bogus": 1}, 2),
    ({"samples": 0}, 2),
    ({"tol": -1}, 2),
    ({"x_range": [3, 1]}, 2),
    ({"equation": {"a": -1, "p": 2, "F": "y", "G": "0"}}, 2),
    ({"equation": {"a": 0, "p": 0, "F": "1", "G": "0"}}, 2),
])
def test_config_files(tmp_path, config, code):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config))
    assert run(tmp_path, "check-symmetries", "--config", str(path))[0] == code


def test_unreadable_config(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("{not json")
    assert run(tmp_path, "algebra", "--config", str(path))[0] == 2
    assert run(tmp_path, "algebra", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_usage_errors():
    assert main([]) == 2
    assert main(["classify", "1", "2"]) == 2
    assert main(["check-symmetries", "--samples", "many"]) == 2


def test_flags_override_config(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"seed": 3}))
    _, report = run(tmp_path, "algebra", "--config", str(path), "--seed", "9")
    assert report["config"]["seed"] == 9
