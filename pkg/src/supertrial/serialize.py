"""JSON document formats for algebras, maps, and derived objects.

Rationals travel as strings ("3", "-1/2") or plain JSON integers so no
reader ever coerces them through floats; floats and booleans are rejected.
Tensors are sparse lists of {i, j, k, v} triples with 0-based indices;
omitted triples are zero and duplicates are an error.  Parsing enforces
every structural invariant and reports the offending field and index.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Mapping

from .constructions import BracketPairSpec
from .core import LinearMap, StructureTensor, SuperBasis, SuperalgebraSpec, TrialgebraSpec
from .errors import InputError
from .linalg import Matrix

_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?\Z")


def parse_rational(value: Any, where: str) -> Fraction:
    """Accept a JSON integer or a 'p' / 'p/q' string with q > 0."""
    if isinstance(value, bool):
        raise InputError(f"{where}: booleans are not rational literals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise InputError(f"{where}: {value!r} is not a rational literal (use 'p' or 'p/q')")
        if "/" in text and int(text.split("/")[1]) == 0:
            raise InputError(f"{where}: zero denominator in {value!r}")
        return Fraction(text)
    raise InputError(f"{where}: expected an integer or rational string, got {type(value).__name__}")


def rational_str(value: Fraction) -> str:
    return str(value)


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _require_object(data: Any, what: str) -> dict:
    if not isinstance(data, dict):
        raise InputError(f"{what} document must be a JSON object")
    return data


def _parse_int(data: Mapping[str, Any], key: str, where: str) -> int:
    value = data.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}.{key}: expected an integer")
    return value


def _parse_parities(data: Mapping[str, Any], dim: int, where: str) -> tuple[int, ...]:
    raw = data.get("parity")
    if not isinstance(raw, list):
        raise InputError(f"{where}.parity: expected a list of 0/1")
    if len(raw) != dim:
        raise InputError(f"{where}.parity: expected {dim} entries, got {len(raw)}")
    out = []
    for idx, p in enumerate(raw):
        if isinstance(p, bool) or p not in (0, 1):
            raise InputError(f"{where}.parity[{idx}]: expected 0 or 1")
        out.append(p)
    return tuple(out)


def _parse_tensor(data: Mapping[str, Any], key: str, dim: int, where: str) -> StructureTensor:
    raw = data.get(key, [])
    if not isinstance(raw, list):
        raise InputError(f"{where}.{key}: expected a list of triples")
    table: dict[tuple[int, int, int], Fraction] = {}
    for pos, entry in enumerate(raw):
        label = f"{where}.{key}[{pos}]"
        if not isinstance(entry, dict):
            raise InputError(f"{label}: expected an object with i, j, k, v")
        triple = []
        for axis in ("i", "j", "k"):
            value = entry.get(axis)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InputError(f"{label}.{axis}: expected an integer index")
            if not 0 <= value < dim:
                raise InputError(f"{label}.{axis}: index {value} out of range for dim {dim}")
            triple.append(value)
        if "v" not in entry:
            raise InputError(f"{label}: missing value field v")
        coeff = parse_rational(entry["v"], f"{label}.v")
        key3 = (triple[0], triple[1], triple[2])
        if key3 in table:
            raise InputError(f"{label}: duplicate triple {key3} in {key}")
        table[key3] = coeff
    return StructureTensor.build(dim, table)


def _parse_square_matrix(data: Mapping[str, Any], key: str, dim: int, where: str) -> Matrix:
    raw = data.get(key)
    if not isinstance(raw, list) or len(raw) != dim:
        raise InputError(f"{where}.{key}: expected {dim} rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise InputError(f"{where}.{key}[{i}]: expected {dim} entries")
        rows.append([parse_rational(v, f"{where}.{key}[{i}][{j}]") for j, v in enumerate(row)])
    return Matrix.from_rows(rows)


def _parse_name(data: Mapping[str, Any], where: str) -> str:
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise InputError(f"{where}.name: expected a non-empty string")
    return name


def parse_algebra(text: str) -> TrialgebraSpec:
    data = _require_object(_load_json(text), "algebra")
    where = "algebra"
    name = _parse_name(data, where)
    dim = _parse_int(data, "dim", where)
    if dim < 1:
        raise InputError(f"{where}.dim: must be at least 1")
    parities = _parse_parities(data, dim, where)
    basis = SuperBasis(parities)
    spec = TrialgebraSpec(
        name=name,
        basis=basis,
        left=_parse_tensor(data, "left", dim, where),
        right=_parse_tensor(data, "right", dim, where),
        perp=_parse_tensor(data, "perp", dim, where),
        gamma=LinearMap.square(basis, _parse_square_matrix(data, "gamma", dim, where)),
        xi=(
            LinearMap.square(basis, _parse_square_matrix(data, "xi", dim, where))
            if data.get("xi") is not None
            else None
        ),
    )
    return spec


def _tensor_entries(tensor: StructureTensor) -> list[dict[str, Any]]:
    return [
        {"i": i, "j": j, "k": k, "v": rational_str(v)}
        for (i, j, k), v in tensor.items()
    ]


def _matrix_rows(matrix: Matrix) -> list[list[str]]:
    return [[rational_str(v) for v in matrix.row(i)] for i in range(matrix.rows)]


def emit_algebra(spec: TrialgebraSpec) -> str:
    doc: dict[str, Any] = {
        "name": spec.name,
        "dim": spec.dimension,
        "parity": list(spec.basis.parities),
        "left": _tensor_entries(spec.left),
        "right": _tensor_entries(spec.right),
        "perp": _tensor_entries(spec.perp),
        "gamma": _matrix_rows(spec.gamma.matrix),
    }
    if spec.xi is not None:
        doc["xi"] = _matrix_rows(spec.xi.matrix)
    return json.dumps(doc, indent=2) + "\n"


def parse_map(text: str) -> Matrix:
    data = _require_object(_load_json(text), "map")
    where = "map"
    rows = _parse_int(data, "rows", where)
    cols = _parse_int(data, "cols", where)
    if rows < 0 or cols < 0:
        raise InputError(f"{where}: rows and cols must be non-negative")
    raw = data.get("entries")
    if not isinstance(raw, list):
        raise InputError(f"{where}.entries: expected a flat row-major list")
    if len(raw) != rows * cols:
        raise InputError(
            f"{where}.entries: expected {rows * cols} entries for {rows}x{cols}, got {len(raw)}"
        )
    entries = tuple(
        parse_rational(v, f"{where}.entries[{idx}]") for idx, v in enumerate(raw)
    )
    return Matrix(rows, cols, entries)


def emit_map(matrix: Matrix) -> str:
    doc = {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "entries": [rational_str(v) for v in matrix.entries],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_superalgebra(text: str) -> SuperalgebraSpec:
    data = _require_object(_load_json(text), "superalgebra")
    where = "superalgebra"
    name = _parse_name(data, where)
    dim = _parse_int(data, "dim", where)
    if dim < 1:
        raise InputError(f"{where}.dim: must be at least 1")
    parities = _parse_parities(data, dim, where)
    basis = SuperBasis(parities)
    if data.get("xi") is None:
        raise InputError(f"{where}.xi: required for superalgebra documents")
    return SuperalgebraSpec(
        name=name,
        basis=basis,
        star=_parse_tensor(data, "star", dim, where),
        gamma=LinearMap.square(basis, _parse_square_matrix(data, "gamma", dim, where)),
        xi=LinearMap.square(basis, _parse_square_matrix(data, "xi", dim, where)),
    )


def emit_superalgebra(alg: SuperalgebraSpec) -> str:
    doc = {
        "name": alg.name,
        "dim": alg.dimension,
        "parity": list(alg.basis.parities),
        "star": _tensor_entries(alg.star),
        "gamma": _matrix_rows(alg.gamma.matrix),
        "xi": _matrix_rows(alg.xi.matrix),
    }
    return json.dumps(doc, indent=2) + "\n"


def emit_bracket_pair(pair: BracketPairSpec) -> str:
    doc = {
        "name": pair.name,
        "dim": pair.basis.dimension,
        "parity": list(pair.basis.parities),
        "star": _tensor_entries(pair.star),
        "bracket": _tensor_entries(pair.bracket),
        "gamma": _matrix_rows(pair.gamma.matrix),
        "xi": _matrix_rows(pair.xi.matrix),
    }
    return json.dumps(doc, indent=2) + "\n"
