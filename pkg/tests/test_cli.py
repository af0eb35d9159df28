import json
import shutil
import subprocess
import sys

import pytest

from hompoincare import refdata
from hompoincare.cli import SCHEMA, main
from hompoincare.refdata import fixture_from_record, load_fixture


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def data_copy(tmp_path, monkeypatch):
    dst = tmp_path / "data"
    shutil.copytree(refdata.data_dir(), dst)
    monkeypatch.setenv(refdata.DATA_ENV, str(dst))
    refdata.clear_caches()
    yield dst
    refdata.clear_caches()


def test_series_plain(capsys):
    assert run(capsys, "series", "--family", "SU", "--rank", "2", "-m", "2") == (0, "1 + t^2 + 2 t^3\n", "")


def test_series_oracle_json_round_trips(capsys):
    code, out, _ = run(capsys, "series", "--family", "G2", "-m", "2", "--method", "oracle", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["schema"] == SCHEMA and rec["group"] == "G2" and rec["method"] == "oracle"
    assert fixture_from_record(rec).coefficients == load_fixture("G2", 2).coefficients


def test_series_json_round_trips_classical(capsys):
    for n in range(2, 7):
        _, out, _ = run(capsys, "series", "--family", "SU", "--rank", str(n), "-m", "2", "--format", "json")
        assert fixture_from_record(json.loads(out)).coefficients == load_fixture(f"SU({n})", 2).coefficients


def test_series_other_formats(capsys):
    _, out, _ = run(capsys, "series", "--family", "SU", "--rank", "2", "-m", "2", "--format", "csv")
    assert out.splitlines() == ["degree,coefficient", "0,1", "2,1", "3,2"]
    _, out, _ = run(capsys, "series", "--family", "SU", "--rank", "3", "-m", "2", "--format", "latex")
    assert out.strip() == "1+t^{2}+2 t^{3}+2 t^{4}+4 t^{5}+t^{6}+2 t^{7}+3 t^{8}"


def test_series_both(capsys):
    code, out, _ = run(capsys, "series", "--family", "Sp", "--rank", "2", "-m", "3", "--method", "both")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].removeprefix("formula:").strip() == lines[1].removeprefix("oracle:").strip()
    assert lines[-1] == "match"


def test_budget_error(capsys):
    code, _, err = run(capsys, "series", "--family", "E8", "-m", "2", "--method", "oracle")
    assert code == 1
    assert "--budget" in err


@pytest.mark.parametrize("argv", [
    ["series", "--family", "XX", "--rank", "2", "-m", "2"],
    ["series", "--family", "SU", "-m", "2"],
    ["series", "--family", "SU", "--rank", "2", "-m", "0"],
    ["series", "--family", "G2", "-m", "2", "--method", "formula"],
    ["top", "--family", "G2", "-m", "3"],
    ["stability", "--family", "SU", "-m", "3", "--rank", "2"],
    ["verify", "--suite", "nonsense"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_top(capsys):
    assert run(capsys, "top", "--family", "U", "--rank", "3", "-m", "2")[:2] == (
        0, "coeff 3 deg 10 | predicted 3,10 | OK\n")
    code, out, _ = run(capsys, "top", "--family", "SO_even", "--rank", "2", "-m", "2")
    assert code == 0 and out.startswith("coeff 4 deg 6")


def test_stability(capsys):
    code, out, _ = run(capsys, "stability", "--family", "SU", "-m", "2", "--rank", "4")
    assert code == 0
    assert "agreement 7" in out and "expected 7" in out and out.rstrip().endswith("OK")


def test_generators(capsys):
    code, out, _ = run(capsys, "generators", "--family", "SU", "--rank", "2", "-m", "2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert [int(ln.split("\t")[1]) for ln in lines] == [2, 3, 3]


def test_su3_relations_report_mismatch(capsys):
    code, out, _ = run(capsys, "generators", "--family", "SU", "--rank", "3", "-m", "2", "--relations")
    assert code == 2
    assert "also zero in the ring: a2*b2, c2*c2" in out
    assert out.rstrip().endswith("MISMATCH")


def test_verify_fixtures_ok(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fixtures")
    assert code == 0
    assert out.splitlines()[-1] == "OK"
    assert all(ln.startswith("PASS") for ln in out.splitlines()[:-1])


def test_verify_formulas_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "formulas", "--budget", "small")
    assert code == 0 and out.splitlines()[-1] == "OK"


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "stability", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["ok"] and rec["suite"] == "stability"
    assert all(c["ok"] for c in rec["checks"])


def test_verify_rejects_tampered_data(capsys, data_copy):
    path = data_copy / "fixtures.tsv"
    path.write_text(path.read_text(encoding="utf-8").replace("[1,0,1,2,2,4,1,2,3]", "[1,0,1,2,2,4,1,2,4]"),
                    encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--suite", "fixtures")
    assert code == 2 and "hash" in out and out.splitlines()[-1] == "FAILED"


def test_verify_names_the_wrong_fixture(capsys, data_copy):
    path = data_copy / "fixtures.tsv"
    path.write_text(path.read_text(encoding="utf-8").replace("[1,0,1,2,2,4,1,2,3]", "[1,0,1,2,2,4,1,2,4]"),
                    encoding="utf-8")
    refdata.write_manifest(data_copy)
    refdata.clear_caches()
    code, out, _ = run(capsys, "verify", "--suite", "fixtures")
    assert code == 2
    assert "SU(3),m=2" in out


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "hompoincare", "verify", "--suite", "topterms", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "hompoincare", "series", "--family", "U",
                          "--rank", "1", "-m", "3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "1 + 3 t + 3 t^2 + t^3"
