"""JSON algebra files, subspace files and canonical serialization."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .algebra import SuperAlgebra
from .arith.fields import QQ, GF, FieldSpec
from .errors import NotGraded, ParseError
from .structure import SubSuperspace

ALGEBRA_FIELDS = {"name", "field", "dim", "parity", "basis_names", "table"}
ENTRY_FIELDS = {"i", "j", "k", "c"}


def dumps(obj) -> str:
    """Line-stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def field_to_json(f: FieldSpec) -> dict:
    return {"kind": "Q"} if f.kind == "Q" else {"kind": "GF", "p": f.p}


def field_from_json(obj) -> FieldSpec:
    if not isinstance(obj, dict) or set(obj) - {"kind", "p"}:
        raise ParseError(f"field: expected {{'kind': 'Q'}} or {{'kind': 'GF', 'p': int}}, got {obj!r}")
    kind = obj.get("kind")
    if kind == "Q":
        if "p" in obj:
            raise ParseError("field: 'p' is only allowed for GF")
        return QQ
    if kind == "GF":
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError("field: 'p' must be an integer")
        try:
            return GF(p)
        except ValueError as exc:
            raise ParseError(f"field: {exc}") from exc
    raise ParseError(f"field: unknown kind {kind!r}")


def parse_scalar(f: FieldSpec, text, where: str):
    if not isinstance(text, str):
        raise ParseError(f"{where}: scalars must be strings, got {text!r}")
    if f.kind == "GF" and "/" in text:
        raise ParseError(f"{where}: fraction syntax is only valid over Q, got {text!r}")
    try:
        return f.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: bad scalar {text!r}: {exc}") from exc


def algebra_to_json(A: SuperAlgebra) -> dict:
    f = A.field
    return {
        "name": A.name,
        "field": field_to_json(f),
        "dim": A.dim,
        "parity": list(A.parity),
        "basis_names": list(A.basis_names),
        "table": [{"i": i, "j": j, "k": k, "c": f.format(c)} for i, j, k, c in A.table],
    }


def _int(obj, where: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise ParseError(f"{where}: expected an integer, got {obj!r}")
    return obj


def algebra_from_json(obj, validate: bool = True) -> SuperAlgebra:
    if not isinstance(obj, dict):
        raise ParseError("algebra: expected a JSON object")
    unknown = set(obj) - ALGEBRA_FIELDS
    if unknown:
        raise ParseError(f"algebra: unknown fields {sorted(unknown)}")
    missing = ALGEBRA_FIELDS - set(obj) - {"basis_names"}
    if missing:
        raise ParseError(f"algebra: missing fields {sorted(missing)}")
    name = obj["name"]
    if not isinstance(name, str):
        raise ParseError("name: expected a string")
    f = field_from_json(obj["field"])
    dim = _int(obj["dim"], "dim")
    if dim < 0:
        raise ParseError("dim: must be nonnegative")
    parity = obj["parity"]
    if not isinstance(parity, list) or any(p not in (0, 1) or isinstance(p, bool) for p in parity):
        raise ParseError("parity: expected an array of 0/1")
    if len(parity) != dim:
        raise ParseError(f"parity: length {len(parity)} does not match dim {dim}")
    names = obj.get("basis_names")
    if names is not None:
        if not isinstance(names, list) or len(names) != dim or not all(isinstance(n, str) for n in names):
            raise ParseError("basis_names: expected one string per basis vector")
        if len(set(names)) != dim:
            raise ParseError("basis_names: names must be distinct")
    table = obj["table"]
    if not isinstance(table, list):
        raise ParseError("table: expected an array")
    entries = []
    for n, e in enumerate(table):
        where = f"table[{n}]"
        if not isinstance(e, dict) or set(e) != ENTRY_FIELDS:
            raise ParseError(f"{where}: expected exactly the fields i, j, k, c")
        i, j, k = (_int(e[key], f"{where}.{key}") for key in ("i", "j", "k"))
        if not all(0 <= t < dim for t in (i, j, k)):
            raise ParseError(f"{where}: index out of range")
        entries.append((i, j, k, parse_scalar(f, e["c"], f"{where}.c")))
    # duplicates and zero coefficients are left for validate() to report
    A = SuperAlgebra(name, f, tuple(parity), tuple(entries), tuple(names) if names else None)
    if validate:
        A.validate().raise_if_invalid()
    return A


def load_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc


def parse_algebra(path, validate: bool = True) -> SuperAlgebra:
    return algebra_from_json(load_json(path), validate)


def write_algebra(A: SuperAlgebra, path) -> None:
    Path(path).write_text(dumps(algebra_to_json(A)), encoding="utf-8")


def algebra_digest(A: SuperAlgebra) -> str:
    return hashlib.sha256(dumps(algebra_to_json(A)).encode()).hexdigest()


def subspace_from_json(A: SuperAlgebra, obj) -> SubSuperspace:
    """An array of coordinate vectors, or {"even": [...], "odd": [...]}."""
    if isinstance(obj, dict):
        if set(obj) - {"even", "odd"}:
            raise ParseError("subspace: only 'even' and 'odd' keys are allowed")
        rows = list(obj.get("even", [])) + list(obj.get("odd", []))
    elif isinstance(obj, list):
        rows = obj
    else:
        raise ParseError("subspace: expected an array of coordinate vectors")
    vecs = []
    for n, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != A.dim:
            raise ParseError(f"subspace[{n}]: expected {A.dim} coordinates")
        coords = [parse_scalar(A.field, x, f"subspace[{n}][{i}]") for i, x in enumerate(row)]
        vecs.append({i: c for i, c in enumerate(coords) if c != 0})
    try:
        return SubSuperspace.from_vectors(A, vecs)
    except NotGraded as exc:
        raise ParseError(f"subspace: {exc}") from exc


def parse_subspace(A: SuperAlgebra, path) -> SubSuperspace:
    return subspace_from_json(A, load_json(path))


def subspace_to_json(S: SubSuperspace) -> list:
    f = S.algebra.field
    return [[f.format(c) for c in row] for row in S.even_basis + S.odd_basis]


__all__ = [
    "dumps", "algebra_to_json", "algebra_from_json", "parse_algebra", "write_algebra",
    "algebra_digest", "subspace_from_json", "parse_subspace", "subspace_to_json",
    "field_to_json", "field_from_json", "parse_scalar", "load_json",
]
