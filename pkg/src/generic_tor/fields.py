"""Exact coefficient fields: the rationals and prime fields F_p (p < 2**31).

Polynomial code works on *raw* coefficient values (``int`` residues for F_p,
``int``/``Fraction`` for Q) together with a :class:`Field` object that knows
how to normalize them.  :class:`PrimeFieldElement` and :class:`Rational` are
the user-facing element types.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

_MAX_PRIME = 2**31


class FieldMismatchError(ValueError):
    """Operands live in different field contexts."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    characteristic: int

    zero = 0
    one = 1

    def __call__(self, value):
        raise NotImplementedError

    def normalize(self, a):
        return a

    def inv(self, a):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def random_element(self, rng, bound: int = 10):
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, PrimeFieldElement):
            raise FieldMismatchError("cannot coerce a prime-field element into Q")
        if isinstance(value, str):
            return self.parse(value)
        f = Fraction(value)
        return f.numerator if f.denominator == 1 else f

    def normalize(self, a):
        if isinstance(a, Fraction) and a.denominator == 1:
            return a.numerator
        return a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.normalize(Fraction(1) / a)

    def parse(self, text: str):
        return self.normalize(Fraction(text.strip()))

    def format(self, a) -> str:
        return str(Fraction(a))

    def random_element(self, rng, bound: int = 10):
        return int(rng.integers(-bound, bound + 1))

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_rational_field, ())

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    def __init__(self, p: int):
        if not (2 <= p < _MAX_PRIME) or not is_prime(p):
            raise ValueError(f"modulus {p} is not a prime below 2^31")
        self.p = p
        self.characteristic = p

    def __call__(self, value):
        if isinstance(value, PrimeFieldElement):
            if value.p != self.p:
                raise FieldMismatchError(f"element of F_{value.p} used in F_{self.p}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return value.numerator % self.p * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def normalize(self, a):
        return a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def parse(self, text: str):
        return self(Fraction(text.strip()))

    def format(self, a) -> str:
        return str(a % self.p)

    def random_element(self, rng, bound: int = 10):
        return int(rng.integers(0, self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def _rational_field():
    return QQ


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Field:
    """Parse ``"Q"``, ``"QQ"``, ``"F7"``, ``"GF(32003)"`` style descriptors."""
    s = spec.strip()
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:GF\(|F_?|Fp)?(\d+)\)?", s)
    if not m:
        raise ValueError(f"unknown field {spec!r}")
    return GF(int(m.group(1)))


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    p: int

    def __post_init__(self):
        if not (0 <= self.value < self.p):
            object.__setattr__(self, "value", self.value % self.p)

    @property
    def field(self) -> PrimeField:
        return GF(self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        raise FieldMismatchError(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return PrimeFieldElement((self.value + self._coerce(other)) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement((self.value - self._coerce(other)) % self.p, self.p)

    def __rsub__(self, other):
        return PrimeFieldElement((self._coerce(other) - self.value) % self.p, self.p)

    def __mul__(self, other):
        return PrimeFieldElement(self.value * self._coerce(other) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value % self.p, self.p)

    def __truediv__(self, other):
        return self * field_inverse(PrimeFieldElement(self._coerce(other), self.p))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)


def field_add(a, b):
    """Exact sum of two elements of the same field (Q or F_p)."""
    if isinstance(a, PrimeFieldElement) or isinstance(b, PrimeFieldElement):
        if not (isinstance(a, PrimeFieldElement) and isinstance(b, PrimeFieldElement)):
            raise FieldMismatchError("mixed Q / F_p operands")
        return a + b
    return Fraction(a) + Fraction(b)


def field_inverse(a):
    if isinstance(a, PrimeFieldElement):
        if a.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return PrimeFieldElement(pow(a.value, -1, a.p), a.p)
    a = Fraction(a)
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / a
