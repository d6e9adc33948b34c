"""Built-in named superalgebras used by the CLI and the regression suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .algebra import SuperAlgebra
from .arith.fields import GF, QQ, FieldSpec
from .errors import BadParams, UnknownName
from .grassmann import GrassmannAlgebra


def shestakov_table(field_: FieldSpec, name: str) -> SuperAlgebra:
    # e1 even; f1, f2 odd.  e1 f2 = f2 e1 = f1, f1 f2 = -f2 f1 = e1
    minus = field_.neg(field_.one)
    return SuperAlgebra.from_products(
        name, field_, (0, 1, 1),
        {(0, 2): {1: 1}, (2, 0): {1: 1}, (1, 2): {0: 1}, (2, 1): {0: minus}},
        ("e1", "f1", "f2"),
    )


def shestakov_alt() -> SuperAlgebra:
    return shestakov_table(GF(3), "shestakov-alt")


def shestakov_jordan(field_: FieldSpec = QQ) -> SuperAlgebra:
    if field_.characteristic == 2:
        raise BadParams("shestakov-jordan needs characteristic != 2")
    return shestakov_table(field_, "shestakov-jordan")


def shestakov_idempotent(field_: FieldSpec = GF(3)) -> SuperAlgebra:
    """Non-alternative control: the same table with e1 e1 = e1 added."""
    base = shestakov_table(field_, "shestakov-idempotent")
    return SuperAlgebra(base.name, field_, base.parity, base.table + ((0, 0, 0, field_.one),), base.basis_names)


def zero_algebra(d0: int, d1: int, field_: FieldSpec = QQ) -> SuperAlgebra:
    if d0 < 0 or d1 < 0:
        raise BadParams("dimensions must be nonnegative")
    names = tuple(f"e{i + 1}" for i in range(d0)) + tuple(f"f{i + 1}" for i in range(d1))
    return SuperAlgebra(f"zero({d0},{d1})", field_, (0,) * d0 + (1,) * d1, (), names)


def _check_pattern(n: int, pattern: str) -> tuple[int, ...]:
    if len(pattern) != n or set(pattern) - {"0", "1"}:
        raise BadParams(f"parity pattern must be a 0/1 string of length {n}")
    return tuple(int(c) for c in pattern)


def matrix_superalgebra(n: int, pattern: str, field_: FieldSpec = QQ, strict_upper: bool = False, name: str | None = None) -> SuperAlgebra:
    """Matrix units E_ij graded by vertex parities: |E_ij| = p_i + p_j mod 2."""
    if n < 1:
        raise BadParams("matrix size must be positive")
    p = _check_pattern(n, pattern)
    units = [(i, j) for i in range(n) for j in range(n) if not strict_upper or i < j]
    index = {u: k for k, u in enumerate(units)}
    products = {}
    for (i, j) in units:
        for (j2, k) in units:
            if j == j2 and (i, k) in index:
                products[(index[(i, j)], index[(j2, k)])] = {index[(i, k)]: 1}
    return SuperAlgebra.from_products(
        name or f"matrix({n},{pattern})", field_,
        tuple((p[i] + p[j]) % 2 for i, j in units), products,
        tuple(f"E{i + 1}{j + 1}" for i, j in units),
    )


def m11(field_: FieldSpec = QQ) -> SuperAlgebra:
    return matrix_superalgebra(2, "01", field_, name="m11")


def upper_tri(n: int, pattern: str | None = None, field_: FieldSpec = QQ) -> SuperAlgebra:
    pattern = pattern if pattern is not None else "".join(str(i % 2) for i in range(n))
    return matrix_superalgebra(n, pattern, field_, strict_upper=True, name=f"upper-tri({n},{pattern})")


def grassmann_aug(m: int, field_: FieldSpec = QQ) -> SuperAlgebra:
    if m < 1:
        raise BadParams("need at least one generator")
    return GrassmannAlgebra(field_, m).as_superalgebra(unital=False)


def plus_of(name: str, *params) -> SuperAlgebra:
    from .engine.jordan import plus_functor

    A = build(name, *params)
    return plus_functor(A).with_name(f"plus-of({A.name})")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    builder: Callable[..., SuperAlgebra]
    params: tuple = ()
    expected: dict = field(default_factory=dict)
    summary: str = ""

    def build(self) -> SuperAlgebra:
        return self.builder(*self.params)


def parse_field(text: str) -> FieldSpec:
    t = text.strip().upper()
    if t in ("Q", "QQ"):
        return QQ
    for prefix in ("GF(", "GF"):
        if t.startswith(prefix):
            body = t[len(prefix):].rstrip(")")
            try:
                return GF(int(body))
            except ValueError as exc:
                raise BadParams(f"bad field {text!r}: {exc}") from exc
    raise BadParams(f"bad field {text!r} (use Q or GF(p))")


def _int(text, what):
    try:
        return int(text)
    except (TypeError, ValueError):
        raise BadParams(f"{what} must be an integer, got {text!r}") from None


def build(name: str, *params) -> SuperAlgebra:
    """Build a corpus algebra from its name and string or typed parameters."""
    params = list(params)

    def fld(k, default):
        if len(params) > k:
            v = params[k]
            return v if isinstance(v, FieldSpec) else parse_field(str(v))
        return default

    def nargs(lo, hi):
        if not lo <= len(params) <= hi:
            raise BadParams(f"{name} takes {lo}..{hi} parameters, got {len(params)}")

    if name == "shestakov-alt":
        nargs(0, 0)
        return shestakov_alt()
    if name == "shestakov-jordan":
        nargs(0, 1)
        return shestakov_jordan(fld(0, QQ))
    if name == "shestakov-idempotent":
        nargs(0, 1)
        return shestakov_idempotent(fld(0, GF(3)))
    if name == "zero":
        nargs(2, 3)
        return zero_algebra(_int(params[0], "d0"), _int(params[1], "d1"), fld(2, QQ))
    if name == "m11":
        nargs(0, 1)
        return m11(fld(0, QQ))
    if name == "upper-tri":
        nargs(1, 3)
        n = _int(params[0], "n")
        pattern = str(params[1]) if len(params) > 1 else None
        return upper_tri(n, pattern, fld(2, QQ))
    if name == "matrix":
        nargs(2, 3)
        return matrix_superalgebra(_int(params[0], "n"), str(params[1]), fld(2, QQ))
    if name == "grassmann-aug":
        nargs(1, 2)
        return grassmann_aug(_int(params[0], "m"), fld(1, QQ))
    if name == "plus-of":
        if not params:
            raise BadParams("plus-of needs the name of an associative corpus algebra")
        return plus_of(str(params[0]), *params[1:])
    raise UnknownName(name)


NAMES = (
    "shestakov-alt", "shestakov-jordan", "shestakov-idempotent", "zero", "m11",
    "upper-tri", "matrix", "grassmann-aug", "plus-of",
)


def _nil(index):
    return {"nilpotent": True, "nilpotency_index": index, "solvable": True}


# Expected verdicts per entry.  "graded_nil" and "r_nilpotent" are omitted
# where the field is Q, since enumeration is impossible there and the
# symbolic route is exercised separately.
ENTRIES: tuple[CorpusEntry, ...] = (
    CorpusEntry("shestakov-alt", build, ("shestakov-alt",), {
        "associative": False, "supercommutative": True, "alternative": True, "jordan": True,
        "graded_nil": True, "graded_nil_index": 2, "nilpotent": False, "solvable": True,
        "r_nilpotent": False,
    }, "nonassociative alternative superalgebra over GF(3)"),
    CorpusEntry("shestakov-alt-gf5", build, ("shestakov-jordan", "GF(5)"), {
        "associative": False, "supercommutative": True, "alternative": False, "jordan": True,
        "nilpotent": False, "solvable": True,
    }, "the same table over GF(5)"),
    CorpusEntry("shestakov-jordan", build, ("shestakov-jordan",), {
        "associative": False, "supercommutative": True, "alternative": False, "jordan": True,
        "nilpotent": False, "solvable": True,
    }, "the same table over Q"),
    CorpusEntry("shestakov-idempotent", build, ("shestakov-idempotent",), {
        "associative": False, "alternative": False, "nilpotent": False,
    }, "control with e1 e1 = e1"),
    CorpusEntry("zero(2,0)", build, ("zero", 2, 0), {
        "associative": True, "supercommutative": True, "alternative": True, "jordan": True, **_nil(2),
    }),
    CorpusEntry("zero(1,2)", build, ("zero", 1, 2), {
        "associative": True, "supercommutative": True, "alternative": True, "jordan": True, **_nil(2),
    }),
    CorpusEntry("m11", build, ("m11",), {
        "associative": True, "supercommutative": False, "alternative": True, "jordan": False,
        "nilpotent": False, "solvable": False,
    }),
    CorpusEntry("m11-gf3", build, ("m11", "GF(3)"), {
        "associative": True, "supercommutative": False, "alternative": True, "jordan": False,
        "graded_nil": False, "nilpotent": False, "solvable": False, "r_nilpotent": False,
    }),
    CorpusEntry("plus-of(m11,GF(3))", build, ("plus-of", "m11", "GF(3)"), {
        "supercommutative": True, "jordan": True, "nilpotent": False,
    }),
    CorpusEntry("upper-tri(3,010)", build, ("upper-tri", 3, "010"), {
        "associative": True, "alternative": True, "supercommutative": False, **_nil(3),
    }),
    CorpusEntry("upper-tri(3,010,GF(3))", build, ("upper-tri", 3, "010", "GF(3)"), {
        "associative": True, "alternative": True, "graded_nil": True, "r_nilpotent": True, **_nil(3),
    }),
    CorpusEntry("upper-tri(4,0101)", build, ("upper-tri", 4, "0101"), {
        "associative": True, "alternative": True, **_nil(4),
    }),
    CorpusEntry("upper-tri(5,01001)", build, ("upper-tri", 5, "01001"), {
        "associative": True, "alternative": True, **_nil(5),
    }),
    CorpusEntry("grassmann-aug(3)", build, ("grassmann-aug", 3), {
        "associative": True, "supercommutative": True, "alternative": True, "jordan": True, **_nil(4),
    }),
    CorpusEntry("grassmann-aug(2,GF(3))", build, ("grassmann-aug", 2, "GF(3)"), {
        "associative": True, "supercommutative": True, "alternative": True, "jordan": True,
        "graded_nil": True, "r_nilpotent": True, **_nil(3),
    }),
)


def entry(name: str) -> CorpusEntry:
    for e in ENTRIES:
        if e.name == name:
            return e
    raise UnknownName(name)
