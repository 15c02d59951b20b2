"""Exact scalar fields: arbitrary-precision rationals and prime fields.

Every computation in the engine runs over one of these two fields so that
equality of values is decidable and all checks are zero-tolerance.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError, SchemaError


class FpElement:
    """An element of the field of integers modulo a prime, reduced to [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _check(self, other: "FpElement") -> None:
        if not isinstance(other, FpElement) or other.p != self.p:
            raise FieldMismatchError(f"cannot combine F_{self.p} with {other!r}")

    def __add__(self, other):
        self._check(other)
        return FpElement(self.value + other.value, self.p)

    def __sub__(self, other):
        self._check(other)
        return FpElement(self.value - other.value, self.p)

    def __mul__(self, other):
        self._check(other)
        return FpElement(self.value * other.value, self.p)

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __truediv__(self, other):
        self._check(other)
        if other.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return self * other.inverse()

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpElement(pow(self.value, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        return (
            isinstance(other, FpElement)
            and other.p == self.p
            and other.value == self.value
        )

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """The field of rationals, elements stored as `fractions.Fraction`."""

    name = "Q"
    p = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.minus_one = Fraction(-1)

    def of(self, x) -> Fraction:
        if isinstance(x, bool) or isinstance(x, float):
            raise SchemaError(f"non-rational literal {x!r} in rational mode")
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise SchemaError(f"cannot interpret {x!r} as a rational")

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational literal {text!r}: {exc}") from None

    def fmt(self, a: Fraction) -> str:
        return str(a)

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def sign(self, exponent: int) -> Fraction:
        return self.one if exponent % 2 == 0 else self.minus_one

    def rand(self, rng, span: int = 3) -> Fraction:
        return Fraction(rng.randint(-span, span))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field of integers modulo a prime p."""

    name = "Fp"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise SchemaError(f"modulus {p} is not prime", field="p")
        self.p = p
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)
        self.minus_one = FpElement(p - 1, p)

    def of(self, x) -> FpElement:
        if isinstance(x, bool) or isinstance(x, float):
            raise SchemaError(f"non-integer literal {x!r} in F_{self.p} mode")
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise FieldMismatchError(f"F_{x.p} element given to F_{self.p}")
            return x
        if isinstance(x, int):
            return FpElement(x, self.p)
        if isinstance(x, str):
            return self.parse(x)
        raise SchemaError(f"cannot interpret {x!r} in F_{self.p}")

    def parse(self, text: str) -> FpElement:
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return FpElement(int(num), self.p) / FpElement(int(den), self.p)
            return FpElement(int(text), self.p)
        except ValueError as exc:
            raise SchemaError(f"bad F_{self.p} literal {text!r}: {exc}") from None
        except ZeroDivisionError:
            raise SchemaError(f"literal {text!r} divides by zero in F_{self.p}") from None

    def fmt(self, a: FpElement) -> str:
        return str(a.value)

    def inv(self, a: FpElement) -> FpElement:
        return a.inverse()

    def sign(self, exponent: int) -> FpElement:
        return self.one if exponent % 2 == 0 else self.minus_one

    def rand(self, rng, span: int = 0) -> FpElement:
        return FpElement(rng.randrange(self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


QQ = RationalField()


def field_from_name(name: str, p: int | None = None):
    if name == "Q":
        return QQ
    if name == "Fp":
        if p is None:
            raise SchemaError("field 'Fp' requires a prime 'p'", field="p")
        return PrimeField(p)
    raise SchemaError(f"unknown field {name!r}", field="field")
