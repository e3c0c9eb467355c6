import json

import pytest

from hminkowski.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "de*ga")
    assert code == 0 and out.strip() == "ga*de + h*de^2"


def test_nf_numeric_mode_uses_oracle(capsys):
    code, out, _ = run(capsys, "nf", "--model", "M2", "--set", "h=1/2", "--family", "derivatives",
                       "d_de*d_ga*d_be")
    assert code == 0 and out.strip()


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "nf", "al ? be")
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [
    ("nf", "--model", "M3", "al"),
    ("nf", "--family", "nope", "al"),
    ("nf", "--model", "M2", "--set", "h=1", "--set", "r=2", "al"),
    ("nf", "--set", "h=x", "al"),
    ("verify", "--suite", "nope"),
    ("derive", "nope"),
    ("show", "--matrix", "Q"),
    ("confluence", "--max-degree", "2"),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_json_is_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code, out, _ = run(capsys, "verify", "--model", "M2", "--suite", "ybe,spectral,det", "--json", str(p),
                           "--no-timing")
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    doc = json.loads(paths[0].read_text())
    assert doc["schema"] == 1 and doc["model"] == "M2" and "timing" not in doc
    assert [c["id"] for c in doc["checks"]] == ["ybe", "spectral", "det_h_K"]
    assert doc["summary"] == {"total": 3, "pass": 3, "fail": 0, "skipped": 0}


def test_verify_with_timing_to_stdout(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "ybe", "--json", "-", "--quiet")
    doc = json.loads(out)
    assert code == 0 and "ybe" in doc["timing"]["checks"]


def test_verify_oracle_at_given_point(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--set", "h=2/3", "--set", "r=-1", "--json", "-",
                       "--quiet", "--no-timing")
    doc = json.loads(out)
    assert code == 0 and doc["oracle_point"] == {"h": "2/3", "r": "-1"}
    assert doc["checks"][0]["details"]["points"] == ["h=2/3, r=-1"]


def test_show(capsys):
    code, out, _ = run(capsys, "show", "--model", "M2", "--matrix", "D_h")
    assert code == 0 and out.splitlines() == ["[1, -2*h]", "[0, 1]"]


def test_derive(capsys):
    code, out, _ = run(capsys, "derive", "--model", "M2", "minkowski")
    assert code == 0
    assert out.startswith("# R_h K1 R2 K2 = K2 R3 K1 R_h_dag  [M2]")
    assert len(out.splitlines()) == 7
    code, raw, _ = run(capsys, "derive", "--raw", "--set", "h=0", "minkowski")
    assert code == 0 and all(line.endswith("= 0") for line in raw.splitlines()[1:])


def test_confluence(capsys):
    code, out, _ = run(capsys, "confluence", "--family", "forms", "--max-degree", "3")
    assert code == 0 and "0 unresolved" in out


def test_export(capsys, tmp_path):
    p = tmp_path / "m1.json"
    assert run(capsys, "export", "--path", str(p))[0] == 0
    doc = json.loads(p.read_text())
    assert doc["model"] == "M1" and doc["parameters"] == ["h", "r"]
    assert len(doc["systems"]["minkowski"]) == 6
    assert doc["scalars"]["det_h_K"]


def test_failed_check_gives_exit_code_one(capsys, monkeypatch):
    from hminkowski import verifier
    bad = verifier.CheckReport("ybe", "fail", [verifier.Witness("forced")])
    monkeypatch.setitem(verifier.CHECKS, "ybe", lambda spec: bad)
    code, out, _ = run(capsys, "verify", "--suite", "ybe")
    assert code == 1 and "FAIL    ybe" in out and "0 passed, 1 failed" in out
