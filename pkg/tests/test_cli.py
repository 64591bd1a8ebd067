import io
import json

from modunits import cli
from modunits.qseries import QSeries


def run_cli(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_poly_text_examples():
    assert run_cli("poly", "F", "--n", "4") == (0, "C\n")
    assert run_cli("poly", "P", "--n", "3") == (0, "-B^3\n")
    code, text = run_cli("poly", "D")
    assert code == 0
    assert text.startswith("B^3*C^4")


def test_poly_json():
    code, text = run_cli("poly", "F", "--n", "8", "--format", "json")
    assert code == 0
    obj = json.loads(text)
    assert obj["terms"][0] == [1, 2, "1"]


def test_poly_f2_is_rational():
    code, text = run_cli("poly", "F", "--n", "2")
    assert code == 0
    assert text.startswith("B / (C^4")
    code, text = run_cli("poly", "F", "--n", "2", "--format", "json")
    obj = json.loads(text)
    assert set(obj) == {"num", "den"}


def test_poly_usage_errors():
    code, _ = run_cli("poly", "F")
    assert code == 2
    code, _ = run_cli("poly", "F", "--n", "1")
    assert code == 2
    code, _ = run_cli("poly", "P", "--n", "500")
    assert code == 2
    code, _ = run_cli("poly", "X", "--n", "4")
    assert code == 2


def test_series_command():
    code, text = run_cli("series", "--k", "1", "--N", "5", "--prec", "4")
    assert code == 0
    obj = json.loads(text)
    assert obj == {"denomN": 5, "ord": 0, "precN": 4, "coeffs": ["1", "-1", "0", "0"]}
    code, _ = run_cli("series", "--k", "9", "--N", "5", "--prec", "4")
    assert code == 2


def test_basis_command():
    code, text = run_cli("basis", "--N", "9")
    assert code == 0
    obj = json.loads(text)
    assert obj["rank"] == 4
    assert len(obj["basis"]) == 4


def test_decompose_exponents():
    code, text = run_cli("decompose", "--N", "5", "--exponents", "12,12")
    assert code == 0
    obj = json.loads(text)
    assert obj["pexpression"]["alpha"] == 2
    assert obj["pexpression"]["beta"] == 12
    assert obj["in_S"] is True
    # not in S: vector is still reported, without a p-expression
    code, text = run_cli("decompose", "--N", "5", "--exponents", "1,0")
    obj = json.loads(text)
    assert code == 0 and obj["in_S"] is False and "pexpression" not in obj


def test_decompose_series_file(tmp_path):
    from modunits.siegel import product_series
    from modunits.unit_lattice import ExpVector

    vec = ExpVector(5, (12, 12))
    fstar = product_series(vec, 5).fstar
    path = tmp_path / "series.json"
    path.write_text(json.dumps(fstar.to_obj()))
    code, text = run_cli("decompose", "--N", "5", "--series", str(path))
    assert code == 0
    obj = json.loads(text)
    assert obj["evector"]["e"] == [12, 12]
    # a non-product series is an input failure, not a crash
    bogus = QSeries.from_terms(5, {0: 1, 1: 7, 2: 1}, 4)
    path.write_text(json.dumps(bogus.to_obj()))
    code, _ = run_cli("decompose", "--N", "5", "--series", str(path))
    assert code == 1


def test_decompose_usage():
    code, _ = run_cli("decompose", "--N", "5")
    assert code == 2
    code, _ = run_cli("decompose", "--N", "5", "--exponents", "1,2", "--series", "x")
    assert code == 2


def test_verify_small_level():
    code, text = run_cli("verify", "--N", "5", "--prec", "75", "--trials", "5")
    assert code == 0
    obj = json.loads(text)
    assert obj["pass"] is True
    checks = {r["check"] for r in obj["reports"]}
    assert checks == {
        "defining_equation",
        "d_consistency",
        "express2_series",
        "ledger",
        "decompose_roundtrip",
        "p_consistency",
    }


def test_verify_range_and_jobs():
    code1, text1 = run_cli("verify", "--N", "4..5", "--trials", "3", "--jobs", "2")
    code2, text2 = run_cli("verify", "--N", "4,5", "--trials", "3")
    assert code1 == code2 == 0
    assert text1 == text2  # deterministic and independent of --jobs


def test_verify_reports_failure_exit_code(monkeypatch):
    def broken(N, precN=None, expansion=None):
        return {"check": "defining_equation", "N": N, "precN": 0, "pass": False}

    monkeypatch.setattr(cli.curve_series, "defining_equation_report", broken)
    code, text = run_cli("verify", "--N", "5", "--prec", "30", "--trials", "1")
    assert code == 1
    assert json.loads(text)["pass"] is False


def test_verify_usage_error():
    code, _ = run_cli("verify", "--N", "3")
    assert code == 2
    code, _ = run_cli("verify", "--N", "abc")
    assert code == 2


def test_determinism_byte_identical():
    a = run_cli("verify", "--N", "5", "--prec", "50", "--trials", "4", "--seed", "9")
    b = run_cli("verify", "--N", "5", "--prec", "50", "--trials", "4", "--seed", "9")
    assert a == b
    c = run_cli("basis", "--N", "12")
    d = run_cli("basis", "--N", "12")
    assert c == d


def test_cache_round_trip(tmp_path):
    cache_dir = tmp_path / "cache"
    cold = run_cli("poly", "F", "--n", "8", "--cache", str(cache_dir))
    entry = cache_dir / "F_000008.json"
    assert entry.exists()
    warm = run_cli("poly", "F", "--n", "8", "--cache", str(cache_dir))
    assert cold == warm
    # corrupt entries are ignored and recomputed
    entry.write_text("{not json")
    again = run_cli("poly", "F", "--n", "8", "--cache", str(cache_dir))
    assert again == cold
    # wrong hash is also rejected
    obj = json.loads(entry.read_text())
    obj["contentHash"] = "0" * 64
    entry.write_text(json.dumps(obj))
    assert run_cli("poly", "F", "--n", "8", "--cache", str(cache_dir)) == cold


def test_cache_entry_schema(tmp_path):
    cache_dir = tmp_path / "cache"
    run_cli("poly", "P", "--n", "6", "--cache", str(cache_dir))
    entry = json.loads((cache_dir / "P_000006.json").read_text())
    assert entry["kind"] == "P" and entry["n"] == 6
    assert {"polynomial", "toolVersion", "contentHash"} <= set(entry)
