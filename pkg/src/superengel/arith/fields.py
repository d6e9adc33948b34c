"""Ground fields: the rationals and prime fields GF(p).

Field elements are kept as *raw* values so that hot loops stay cheap:
``gmpy2.mpq`` for the rationals and plain ``int`` residues in ``[0, p)``
for GF(p).  :class:`FieldSpec` carries the arithmetic on those raw values;
:class:`Scalar` is the value-plus-field wrapper used at API boundaries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

import gmpy2
from gmpy2 import mpq

from ..errors import DivisionByZero, FieldMismatch

_MPQ = type(mpq(0))
_FRACTION_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "Q" or "GF"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == "GF":
            if not isinstance(self.p, int) or self.p < 2 or not gmpy2.is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime p >= 2, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # construction helpers
    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("GF", int(p))

    def __str__(self):
        return "Q" if self.kind == "Q" else f"GF({self.p})"

    @property
    def is_finite(self) -> bool:
        return self.kind == "GF"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def order(self) -> int | None:
        return self.p if self.kind == "GF" else None

    # raw arithmetic
    @property
    def zero(self):
        return mpq(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return mpq(1) if self.kind == "Q" else 1

    def norm(self, x):
        """Bring an integer expression back to canonical form."""
        if self.kind == "Q":
            return x if type(x) is _MPQ else mpq(x)
        return x % self.p

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self}")
        if self.kind == "Q":
            return 1 / mpq(a)
        return pow(int(a), self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return mpq(n) if self.kind == "Q" else n % self.p

    def sign(self, exponent: int):
        """(-1)**exponent as a field element."""
        return self.one if exponent % 2 == 0 else self.neg(self.one)

    def coerce(self, x):
        """Accept ints, Fractions, mpq, Scalars or strings."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} value used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, (Fraction, _MPQ)):
            if self.kind == "Q":
                return mpq(x.numerator, x.denominator)
            return self.div(self.from_int(int(x.numerator)), self.from_int(int(x.denominator)))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def parse(self, text: str):
        """Parse the scalar string format: "a/b" over Q, a residue "n" over GF(p)."""
        m = _FRACTION_RE.match(text)
        if m is None:
            raise ValueError(f"malformed scalar {text!r}")
        num, den = m.group(1), m.group(2)
        if self.kind == "Q":
            if den is not None and int(den) == 0:
                raise DivisionByZero(f"zero denominator in {text!r}")
            return mpq(int(num), int(den) if den else 1)
        if den is not None:
            raise ValueError(f"fraction syntax {text!r} is only valid over Q")
        return int(num) % self.p

    def format(self, a) -> str:
        if self.kind == "Q":
            a = mpq(a)
            return f"{a.numerator}/{a.denominator}"
        return str(int(a) % self.p)

    def elements(self):
        """All field elements in increasing residue order (finite fields only)."""
        if not self.is_finite:
            raise ValueError("the rationals cannot be enumerated")
        return range(self.p)

    def random(self, rng, bound: int = 5):
        if self.is_finite:
            return rng.randrange(self.p)
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        return mpq(num, den)

    def as_dict(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "GF", "p": self.p}

    @classmethod
    def from_dict(cls, d: dict) -> FieldSpec:
        if d.get("kind") == "Q" and set(d) == {"kind"}:
            return cls.rationals()
        if d.get("kind") == "GF" and set(d) == {"kind", "p"}:
            return cls.prime(d["p"])
        raise ValueError(f"bad field description {d!r}")


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)


@total_ordering
@dataclass(frozen=True)
class Scalar:
    """An immutable field element tagged with its field."""

    field: FieldSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> Scalar:
        return cls(field, field.parse(text))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inv(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        acc = self.field.one
        for _ in range(n):
            acc = self.field.mul(acc, self.value)
        return Scalar(self.field, acc)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __lt__(self, other):
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self})"
