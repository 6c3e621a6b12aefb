import csv
import io
import json

import pytest

from quartic_cm import cli


def run(argv, monkeypatch=None):
    out = io.StringIO()
    code = cli.run(argv, out)
    return code, out.getvalue()


def test_invariants_json():
    code, out = run(["invariants", "-d", "23"])
    obj = json.loads(out)
    assert code == 0
    assert obj["polys"]["H"]["coeffs"] == ["1", "3491750", "-5151296875", "12771880859375"]
    assert all(isinstance(c, str) for c in obj["polys"]["b"]["coeffs"])


def test_bad_discriminant_exit_code(capsys):
    code, _ = run(["invariants", "-d", "9999998"])
    assert code == 2
    assert "invariants" in capsys.readouterr().err


def test_certification_failure_exit_code(monkeypatch):
    from quartic_cm.mp import CertificationFailed

    def boom(d, ctx=None):
        raise CertificationFailed(f"d={d}")

    monkeypatch.setattr("quartic_cm.fermat.fermat_solution", boom)
    assert run(["fermat", "-d", "23"])[0] == 3


def test_search_exhausted_exit_code(monkeypatch):
    from quartic_cm.qf import SearchExhausted

    def boom(d):
        raise SearchExhausted("none")

    monkeypatch.setattr("quartic_cm.qf.class_representatives", boom)
    assert run(["classgroup", "-d", "23"])[0] == 4


def test_tables_csv_matches_reference():
    from quartic_cm.reference import reference_poly
    code, out = run(["--format", "csv", "tables", "--kind", "b", "--range", "15..103"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["d", "kind", "degree", "coeffs..."]
    assert "\r" not in out
    for row in rows[1:]:
        d = int(row[0])
        ref = reference_poly(d, "b")
        if ref is not None:
            assert [int(c) for c in row[3:]] == list(reversed(ref.coeffs))


def test_fermat_d7():
    code, out = run(["fermat", "-d", "7"])
    obj = json.loads(out)
    assert code == 0
    assert float(obj["pi"][0]) == pytest.approx(0.5)
    assert float(obj["pi"][1]) == pytest.approx(-(7 ** 0.5) / 2)
    assert obj["residual"] < 1e-15
    assert set(obj) >= {"pi", "xi", "j", "residual", "checks"}


def test_fermat_conductor():
    code, out = run(["fermat", "-d", "7", "--conductor", "3"])
    assert code == 0 and json.loads(out)["d"] == 63


def test_qk_and_classgroup():
    code, out = run(["qk", "-d", "23"])
    assert code == 0 and json.loads(out)["x"] == {"a": "-7/9", "b": "1/9"}
    code, out = run(["classgroup", "-d", "159"])
    assert code == 0 and json.loads(out)["h"] == 10


def test_check_subcommands_pass():
    for argv in (["--format", "text", "elimination"], ["--format", "text", "torsion", "-d", "23"]):
        code, out = run(argv)
        assert code == 0 and "FAIL" not in out


def test_verify_reference_suite():
    code, out = run(["--format", "text", "--verify-reference"])
    assert code == 0, out
    assert "FAIL" not in out and out.count("PASS") > 100


def test_cache_round_trip_is_byte_identical(tmp_path):
    argv = ["--cache-dir", str(tmp_path), "--format", "csv", "invariants", "--range", "15..63"]
    cold = run(argv)
    files = sorted(p.name for p in tmp_path.rglob("*.json"))
    assert files and not any(n.startswith(".tmp") for n in files)
    warm = run(argv)
    assert cold == warm


def test_cache_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("QUARTIC_CM_CACHE_DIR", str(tmp_path))
    run(["invariants", "-d", "15"])
    assert list(tmp_path.rglob("15_H.json"))


def test_cache_records_margin(tmp_path):
    run(["--cache-dir", str(tmp_path), "invariants", "-d", "23"])
    obj = json.loads(next(tmp_path.rglob("23_b.json")).read_text())
    assert 0 <= obj["margin"] < 2 ** -20
    assert obj["poly"]["coeffs"][0] == "8"


def test_worker_count_does_not_change_output():
    argv = ["--format", "csv", "tables", "--kind", "t", "--range", "39..200"]
    assert run(["--workers", "1"] + argv) == run(["--workers", "3"] + argv)


def test_bits_option():
    assert run(["--bits", "256", "qk", "-d", "31"])[0] == 0
    with pytest.raises(SystemExit):
        run(["--bits", "16", "qk", "-d", "31"])
