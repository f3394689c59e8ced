import json

import pytest

from hktlie import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# roots

def test_roots_b3(capsys):
    code, out, _ = run(capsys, "roots", "B3")
    assert code == 0
    assert "positive roots (9)" in out
    assert "(1,1,0)" in out
    assert "A1 + A1" in out


def test_roots_a1(capsys):
    code, out, _ = run(capsys, "roots", "A1")
    assert code == 0
    assert "positive roots (1)" in out


def test_roots_d4_surgery(capsys):
    code, out, _ = run(capsys, "roots", "D4")
    assert code == 0
    assert "A1 + A1 + A1" in out


def test_roots_json_roundtrip(capsys):
    code, out, _ = run(capsys, "--json", "roots", "B3")
    assert code == 0
    doc = json.loads(out)
    assert doc["surgery"]["summands"] == ["A1", "A1"]
    assert cli.canonical_json(doc) == out.strip()


def test_roots_bad_input(capsys):
    code, _, err = run(capsys, "roots", "Q7")
    assert code == 2
    assert "error" in err


def test_roots_out_of_range(capsys):
    code, _, err = run(capsys, "roots", "B9")
    assert code == 2
    assert "range" in err


# ---------------------------------------------------------------------------
# verify

def test_verify_a2_certified(capsys):
    code, out, _ = run(capsys, "verify", "A2")
    assert code == 0
    assert "verdict: certified" in out


def test_verify_a3_not_admissible(capsys):
    code, out, _ = run(capsys, "verify", "A3")
    assert code == 3
    assert "requires 1 u(1) factor" in out


def test_verify_b3_padded(capsys):
    code, out, _ = run(capsys, "verify", "B3xU1^3")
    assert code == 0
    assert "dimension: 24" in out


def test_verify_coset_string(capsys):
    code, out, _ = run(capsys, "verify", "B3xU1^2/A1:gamma")
    assert code == 0
    assert "dimension: 20" in out


def test_verify_coset_with_abelian(capsys):
    code, out, _ = run(capsys, "verify", "A3xU1^1/A1:beta,u1")
    assert code == 0
    assert "dimension: 12" in out


def test_verify_parse_error(capsys):
    code, _, err = run(capsys, "verify", "A2/")
    assert code == 2
    assert "error" in err


def test_verify_unknown_summand(capsys):
    code, _, err = run(capsys, "verify", "B3xU1^2/A1:delta")
    assert code == 2
    assert "available" in err


def test_verify_json_certificate(capsys):
    code, out, _ = run(capsys, "--json", "verify", "A2")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "certified"
    assert doc["dimension"] == 8
    assert set(doc["residuals"]) == {"I", "J", "K"}
    for key in ("integrability", "square", "bismut", "torsion_match", "nijenhuis"):
        assert key in doc["residuals"]["I"]
    # canonical serialization round-trips byte for byte
    assert cli.canonical_json(json.loads(out)) == out.strip()


def test_verify_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("HKT_TOL", "1e-6")
    code, out, _ = run(capsys, "--json", "verify", "A2")
    assert code == 0
    assert json.loads(out)["tolerance"] == 1e-6


def test_tolerance_validation(capsys):
    code, _, err = run(capsys, "--tol", "0.5", "verify", "A2")
    assert code == 2
    assert "tolerance" in err
    code, _, err = run(capsys, "--fd-step", "1", "verify", "A2")
    assert code == 2


# ---------------------------------------------------------------------------
# classify / catalog

def test_classify_a7(capsys):
    code, out, _ = run(capsys, "classify", "A", "7")
    assert code == 0
    paddings = {}
    for line in out.splitlines():
        if line.startswith("SU("):
            name, _rank, _dim, pad, _tot = line.split()
            paddings[name] = int(pad)
    assert paddings == {"SU(2)": 1, "SU(3)": 0, "SU(4)": 1, "SU(5)": 0,
                        "SU(6)": 1, "SU(7)": 0, "SU(8)": 1}


def test_classify_c1(capsys):
    code, out, _ = run(capsys, "classify", "C", "1")
    assert code == 0
    assert "Sp(1)" in out and " 1" in out


def test_classify_out_of_range(capsys):
    code, _, err = run(capsys, "classify", "D", "9")
    assert code == 2


def test_catalog_a3_verify(capsys):
    code, out, _ = run(capsys, "catalog", "A", "3", "--verify")
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 4
    assert all("certified" in l for l in lines)


def test_catalog_json(capsys):
    code, out, _ = run(capsys, "--json", "catalog", "B", "3")
    assert code == 0
    doc = json.loads(out)
    assert len(doc) == 4
    assert cli.canonical_json(doc) == out.strip()


def test_catalog_parallel_jobs(capsys):
    code, out, _ = run(capsys, "--jobs", "2", "catalog", "A", "2", "--verify")
    assert code == 0
    assert all("certified" in l for l in out.splitlines() if l.strip())


# ---------------------------------------------------------------------------
# spec-string grammar details

def test_parse_space_strings():
    spec = cli.parse_space_string("A2")
    assert spec.factors == (("A", 2),) and spec.u1_count == 0
    spec = cli.parse_space_string("A3xU1^1")
    assert spec.u1_count == 1
    spec = cli.parse_space_string("A1xA2xU1^2")
    assert spec.factors == (("A", 1), ("A", 2)) and spec.u1_count == 2
    spec = cli.parse_space_string("B3xU1^2/A1:gamma")
    assert spec.selections[0].summands == ("A1:gamma",)
    assert not spec.selections[0].include_abelian
    spec = cli.parse_space_string("A6/A4")
    assert spec.selections[0].summands == ("A4:011110",)
    spec = cli.parse_space_string("A2xU1^1/u1")
    assert spec.selections[0].include_abelian
    assert spec.selections[0].summands == ()


def test_parse_rejects_garbage():
    for bad in ("", "X9", "A2/u1/u1", "A2x", "B3/A1:alpha,A4"):
        with pytest.raises(cli.SpecParseError):
            cli.parse_space_string(bad)


def test_ambiguous_summand_needs_label():
    with pytest.raises(cli.SpecParseError, match="ambiguous"):
        cli.parse_space_string("B3xU1^2/A1")


def test_canonical_json_formatting():
    s = cli.canonical_json({"b": 0.1, "a": [1, None, True], "c": "x"})
    assert s == '{"a":[1,null,true],"b":0.10000000000000001,"c":"x"}'
    assert cli.canonical_json(json.loads(s)) == s


def test_catalog_verify_json_full_reports(capsys):
    code, out, _ = run(capsys, "--json", "catalog", "A", "2", "--verify")
    assert code == 0
    docs = json.loads(out)
    assert len(docs) == 2
    assert all(d["verdict"] == "certified" for d in docs)
    assert all("residuals" in d and "basic_roots" in d for d in docs)
    assert cli.canonical_json(docs) == out.strip()


def test_verify_residual_failure_exit_code(capsys):
    # machine-precision residuals cannot beat a 1e-18 tolerance
    code, out, _ = run(capsys, "--tol", "1e-18", "verify", "A2")
    assert code == 1
    assert "verdict: failed" in out
