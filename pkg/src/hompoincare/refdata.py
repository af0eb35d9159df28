"""Vendored reference data: reference series, Cartan matrices and degree tables.

Every data file is a UTF-8, tab-separated text file with one record per line.
Fixture records look like::

    SU(2),m=2<TAB>[1,0,1,2]<TAB>citation[<TAB>{"raw": ..., "note": ...}]

The optional fourth column keeps the source text verbatim whenever the
canonical coefficients differ from a literal reading of it.  ``MANIFEST``
lists a sha256 digest per file and is checked on every load.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from pathlib import Path

DATA_ENV = "HOMPOINCARE_DATA_DIR"

EXCEPTIONAL = ("G2", "F4", "E6", "E7", "E8")


class UnknownKey(KeyError):
    """Requested record is not present in the data files."""


class ValidationFailure(ValueError):
    """A data file is corrupt or violates its structural invariants."""


@dataclass(frozen=True)
class FixtureSeries:
    label: str
    m: int
    coefficients: tuple
    source: str
    annotation: dict = field(default=None, compare=False)

    @property
    def key(self) -> str:
        return fixture_key(self.label, self.m)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class CartanSpec:
    label: str
    matrix: tuple
    source: str = ""

    @property
    def rank(self) -> int:
        return len(self.matrix)


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(__file__).with_name("data")


def fixture_key(label: str, m: int) -> str:
    return f"{label},m={m}"


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def read_manifest(directory: Path) -> dict:
    path = directory / "MANIFEST"
    if not path.exists():
        raise ValidationFailure(f"missing manifest in {directory}")
    out = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            digest, name = line.split(None, 1)
            out[name.strip()] = digest
    return out


def write_manifest(directory: Path) -> None:
    names = sorted(p.name for p in directory.iterdir()
                   if p.is_file() and p.name != "MANIFEST" and p.suffix == ".tsv")
    lines = [f"{_sha256(directory / n)}  {n}" for n in names]
    (directory / "MANIFEST").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _checked_text(name: str, directory: Path) -> str:
    path = directory / name
    if not path.exists():
        raise ValidationFailure(f"missing data file {path}")
    expected = read_manifest(directory).get(name)
    if expected is None:
        raise ValidationFailure(f"{name} is not listed in the manifest")
    if _sha256(path) != expected:
        raise ValidationFailure(f"{name}: content hash does not match the manifest")
    return path.read_text(encoding="utf-8")


# --- fixture series -------------------------------------------------------

def parse_fixture_line(line: str) -> FixtureSeries:
    cols = line.split("\t")
    if len(cols) not in (3, 4):
        raise ValidationFailure(f"expected 3 or 4 tab-separated columns: {line[:60]!r}")
    key, arr, source = cols[:3]
    label, _, mpart = key.partition(",m=")
    try:
        m = int(mpart)
        coeffs = json.loads(arr)
        note = json.loads(cols[3]) if len(cols) == 4 else None
    except ValueError as exc:
        raise ValidationFailure(f"malformed record {key!r}: {exc}") from None
    if not coeffs or not all(isinstance(c, int) for c in coeffs):
        raise ValidationFailure(f"{key}: coefficients must be a nonempty integer list")
    if any(c < 0 for c in coeffs):
        raise ValidationFailure(f"{key}: negative coefficient")
    if coeffs[0] != 1 or coeffs[-1] == 0:
        raise ValidationFailure(f"{key}: constant term must be 1 and top term nonzero")
    return FixtureSeries(label, m, tuple(coeffs), source, note)


def serialize_fixture(fx: FixtureSeries) -> str:
    cols = [fx.key, json.dumps(list(fx.coefficients), separators=(",", ":")), fx.source]
    if fx.annotation is not None:
        cols.append(json.dumps(fx.annotation, ensure_ascii=False, sort_keys=True))
    return "\t".join(cols)


def fixture_from_record(obj: dict) -> FixtureSeries:
    """Validate a JSON series record (as emitted by the CLI) through the fixture parser."""
    try:
        line = "\t".join([fixture_key(obj["group"], obj["m"]),
                          json.dumps(obj["coefficients"], separators=(",", ":")),
                          obj.get("source", "")])
    except (KeyError, TypeError) as exc:
        raise ValidationFailure(f"incomplete series record: {exc}") from None
    return parse_fixture_line(line)


def parse_fixtures(text: str) -> list:
    return [parse_fixture_line(ln) for ln in text.splitlines()
            if ln.strip() and not ln.startswith("#")]


def serialize_fixtures(records, header: str = "") -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [serialize_fixture(fx) for fx in records]
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def _fixtures(directory: str) -> dict:
    text = _checked_text("fixtures.tsv", Path(directory))
    out = {}
    for fx in parse_fixtures(text):
        if fx.key in out:
            raise ValidationFailure(f"duplicate fixture key {fx.key}")
        out[fx.key] = fx
    return out


def fixture_keys() -> list:
    return list(_fixtures(str(data_dir())))


def load_fixture(label, m: int = 2) -> FixtureSeries:
    """Look up a reference series by group label (e.g. ``"SU(3)"``, ``"F4"``) and m."""
    key = fixture_key(label, m)
    table = _fixtures(str(data_dir()))
    if key not in table:
        raise UnknownKey(key)
    return table[key]


# --- Cartan matrices and degrees ------------------------------------------

def _validate_cartan(label: str, mat) -> None:
    r = len(mat)
    if any(len(row) != r for row in mat):
        raise ValidationFailure(f"{label}: Cartan matrix is not square")
    for i in range(r):
        if mat[i][i] != 2:
            raise ValidationFailure(f"{label}: diagonal entry {i} is not 2")
        for j in range(r):
            if i != j:
                if mat[i][j] > 0:
                    raise ValidationFailure(f"{label}: positive off-diagonal entry")
                if (mat[i][j] == 0) != (mat[j][i] == 0):
                    raise ValidationFailure(f"{label}: zero pattern is not symmetric")
                if mat[i][j] * mat[j][i] > 3:
                    raise ValidationFailure(f"{label}: off-diagonal product exceeds 3")


@lru_cache(maxsize=None)
def _table(name: str, directory: str) -> dict:
    out = {}
    for line in _checked_text(name, Path(directory)).splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 2:
            raise ValidationFailure(f"{name}: malformed line {line!r}")
        try:
            out[cols[0]] = (json.loads(cols[1]), cols[2] if len(cols) > 2 else "")
        except ValueError as exc:
            raise ValidationFailure(f"{name}: {cols[0]}: {exc}") from None
    return out


def load_cartan(label: str) -> CartanSpec:
    table = _table("cartan.tsv", str(data_dir()))
    if label not in table:
        raise UnknownKey(label)
    mat, source = table[label]
    _validate_cartan(label, mat)
    return CartanSpec(label, tuple(tuple(r) for r in mat), source)


def exceptional_degrees(label: str) -> list:
    table = _table("degrees.tsv", str(data_dir()))
    if label not in table:
        raise UnknownKey(label)
    degs, _ = table[label]
    if not all(isinstance(d, int) and d >= 1 for d in degs):
        raise ValidationFailure(f"{label}: degrees must be positive integers")
    if prod(degs) != exceptional_order(label):
        raise ValidationFailure(f"{label}: product of degrees differs from the Weyl group order")
    return list(degs)


def exceptional_order(label: str) -> int:
    table = _table("orders.tsv", str(data_dir()))
    if label not in table:
        raise UnknownKey(label)
    return table[label][0]


def load_degrees(spec) -> list:
    """Characteristic degrees for a ``GroupSpec`` (delegates to weylgroups)."""
    from .weylgroups import characteristic_degrees
    return characteristic_degrees(spec)


def clear_caches() -> None:
    _fixtures.cache_clear()
    _table.cache_clear()
