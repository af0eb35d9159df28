import shutil
from math import prod

import pytest

from hompoincare import refdata
from hompoincare.refdata import (CartanSpec, FixtureSeries, UnknownKey, ValidationFailure,
                                 exceptional_degrees, exceptional_order, fixture_from_record,
                                 fixture_keys, load_cartan, load_degrees, load_fixture,
                                 parse_fixture_line, parse_fixtures, serialize_fixture,
                                 serialize_fixtures, write_manifest)
from hompoincare.weylgroups import Family, GroupSpec


@pytest.fixture
def data_copy(tmp_path, monkeypatch):
    """A private copy of the data directory, active for the duration of the test."""
    dst = tmp_path / "data"
    shutil.copytree(refdata.data_dir(), dst)
    monkeypatch.setenv(refdata.DATA_ENV, str(dst))
    refdata.clear_caches()
    yield dst
    refdata.clear_caches()


def test_load_fixture_examples():
    assert load_fixture("SU(2)", 2).coefficients == (1, 0, 1, 2)
    g2 = load_fixture("G2", 2).coefficients
    assert g2 == (1, 0, 1, 2, 1, 2, 1, 0, 0, 0, 1, 2, 0, 2, 3)
    e8 = load_fixture("E8", 2)
    assert e8.degree == 248 and e8.coefficients[-1] == 9


def test_unknown_key():
    with pytest.raises(UnknownKey):
        load_fixture("SU(9)", 2)
    with pytest.raises(UnknownKey):
        load_cartan("H3")


def test_annotations_keep_source_text():
    su5 = load_fixture("SU(5)", 2)
    assert su5.annotation and "x" in su5.annotation["raw"]
    assert su5.coefficients[5] == 4
    assert load_fixture("F4", 2).annotation is not None
    assert load_fixture("SU(3)", 2).annotation is None


def test_fixture_keys():
    keys = fixture_keys()
    assert {f"SU({n}),m=2" for n in range(2, 7)} <= set(keys)
    assert {f"{g},m=2" for g in ("G2", "F4", "E6", "E7", "E8")} <= set(keys)


def test_file_round_trip():
    text = (refdata.data_dir() / "fixtures.tsv").read_text(encoding="utf-8")
    header = "\n".join(ln[2:] for ln in text.splitlines() if ln.startswith("# "))
    again = serialize_fixtures(parse_fixtures(text), header)
    assert again == text
    assert parse_fixtures(again) == parse_fixtures(text)


def test_line_round_trip():
    fx = FixtureSeries("SU(2)", 2, (1, 0, 1, 2), "somewhere", {"note": "n", "raw": "r"})
    line = serialize_fixture(fx)
    assert parse_fixture_line(line) == fx
    assert parse_fixture_line(line).annotation == fx.annotation


@pytest.mark.parametrize("line", [
    "SU(2),m=2\t[1,0,1,2]",
    "SU(2),m=2\t[1,0,-1,2]\tsrc",
    "SU(2),m=2\t[2,0,1,2]\tsrc",
    "SU(2),m=2\t[1,0,1,0]\tsrc",
    "SU(2),m=x\t[1,0,1,2]\tsrc",
    "SU(2),m=2\t[1,0.5]\tsrc",
])
def test_malformed_lines(line):
    with pytest.raises(ValidationFailure):
        parse_fixture_line(line)


def test_json_record_round_trip():
    rec = {"schema": "x", "group": "SU(3)", "m": 2, "coefficients": [1, 0, 1, 2, 2, 4, 1, 2, 3]}
    fx = fixture_from_record(rec)
    assert fx.coefficients == load_fixture("SU(3)", 2).coefficients
    with pytest.raises(ValidationFailure):
        fixture_from_record({"group": "SU(3)"})


def test_tampered_file_is_rejected(data_copy):
    path = data_copy / "fixtures.tsv"
    path.write_text(path.read_text(encoding="utf-8").replace("[1,0,1,2]", "[1,0,1,3]"), encoding="utf-8")
    with pytest.raises(ValidationFailure, match="hash"):
        load_fixture("SU(2)", 2)


def test_manifest_rewrite_accepts_edit(data_copy):
    path = data_copy / "fixtures.tsv"
    path.write_text(path.read_text(encoding="utf-8").replace("[1,0,1,2]", "[1,0,1,3]"), encoding="utf-8")
    write_manifest(data_copy)
    refdata.clear_caches()
    assert load_fixture("SU(2)", 2).coefficients == (1, 0, 1, 3)


def test_cartan_examples():
    g2 = load_cartan("G2")
    assert isinstance(g2, CartanSpec) and g2.rank == 2
    assert g2.matrix[0][1] * g2.matrix[1][0] == 3
    for label, r in (("F4", 4), ("E6", 6), ("E7", 7), ("E8", 8)):
        assert load_cartan(label).rank == r


def test_invalid_cartan_is_rejected(data_copy):
    path = data_copy / "cartan.tsv"
    path.write_text(path.read_text(encoding="utf-8").replace("[[2,-1],[-3,2]]", "[[2,1],[-3,2]]"),
                    encoding="utf-8")
    write_manifest(data_copy)
    refdata.clear_caches()
    with pytest.raises(ValidationFailure):
        load_cartan("G2")


def test_degree_tables():
    assert load_degrees(GroupSpec(Family.E7)) == [2, 6, 8, 10, 12, 14, 18]
    assert load_degrees(GroupSpec(Family.SOeven, 4)) == [2, 4, 6, 4]
    for label in refdata.EXCEPTIONAL:
        assert prod(exceptional_degrees(label)) == exceptional_order(label)
    assert exceptional_order("G2") == 12


def test_degree_order_mismatch_is_rejected(data_copy):
    path = data_copy / "orders.tsv"
    path.write_text(path.read_text(encoding="utf-8").replace("G2\t12", "G2\t13"), encoding="utf-8")
    write_manifest(data_copy)
    refdata.clear_caches()
    with pytest.raises(ValidationFailure):
        exceptional_degrees("G2")


@pytest.mark.parametrize("label,rank,dim", [("G2", 2, 14), ("F4", 4, 52), ("E6", 6, 78),
                                            ("E7", 7, 133), ("E8", 8, 248)])
def test_exceptional_fixtures_end_in_rank_plus_one(label, rank, dim):
    fx = load_fixture(label, 2)
    assert (fx.coefficients[-1], fx.degree) == (rank + 1, dim)
