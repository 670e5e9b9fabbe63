"""Scalar backends: exact rationals, prime fields and complex floats.

A backend is a small object that knows how to coerce values into its
elements and reports its characteristic.  Elements themselves are plain
numbers (``gmpy2.mpq``, ``complex``) or :class:`GFElement`, so the
algebra code can use ordinary operators.
"""

from __future__ import annotations

import numbers
import random
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

_MPQ = type(mpq(0))


class UnsupportedOperation(ArithmeticError):
    """Raised when an operation needs 2 or 3 to be invertible and it is not."""


class MixedFieldError(TypeError):
    """Raised when operands live over different scalar backends."""


class Field:
    characteristic: int = 0
    exact: bool = True

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def random(self, rng: random.Random):
        raise NotImplementedError

    def inverse_of(self, n: int):
        """Return 1/n in this field, or raise if n vanishes here."""
        if self.characteristic and n % self.characteristic == 0:
            raise UnsupportedOperation(
                f"{n} is not invertible in characteristic {self.characteristic}")
        return self.one / self(n)

    def require_invertible(self, n: int, what: str = "operation"):
        if self.characteristic and n % self.characteristic == 0:
            raise UnsupportedOperation(
                f"{what} divides by {n}; unavailable in characteristic "
                f"{self.characteristic}")

    def is_zero(self, value) -> bool:
        return value == 0


class RationalField(Field):
    """The field of rational numbers.

    Elements are ``gmpy2.mpq``, which interoperates with ``Fraction`` (equal
    values hash and compare equal) and is an order of magnitude faster.
    """

    characteristic = 0

    def __call__(self, value):
        if type(value) is _MPQ:
            return value
        if isinstance(value, str):
            return mpq(Fraction(value))
        return mpq(value)

    def random(self, rng, height=6):
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        return mpq(num, den)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class ComplexField(Field):
    """Floating complex numbers; equality tests are exact, so use with care."""

    characteristic = 0
    exact = False

    def __call__(self, value):
        if isinstance(value, Fraction):
            return complex(float(value))
        return complex(value)

    def random(self, rng):
        return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))

    def is_zero(self, value, tol=1e-12):
        return abs(value) <= tol

    def __repr__(self):
        return "CC"

    def __eq__(self, other):
        return isinstance(other, ComplexField)

    def __hash__(self):
        return hash("CC")


@dataclass(frozen=True, slots=True)
class GFElement:
    value: int
    p: int

    def _other(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise MixedFieldError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, numbers.Rational):
            return int(other.numerator) * pow(int(other.denominator), -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GFElement((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GFElement((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GFElement((o - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GFElement((self.value * o) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.value % self.p, self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return GFElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * GFElement(o % self.p, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.inverse() * o

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return GFElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class PrimeField(Field):
    """The prime field GF(p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __call__(self, value):
        if isinstance(value, GFElement):
            if value.p != self.p:
                raise MixedFieldError(f"GF({value.p}) element into GF({self.p})")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, numbers.Rational) and not isinstance(value, int):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({self.p})")
            return GFElement(
                value.numerator * pow(value.denominator, -1, self.p) % self.p, self.p)
        return GFElement(int(value) % self.p, self.p)

    def random(self, rng):
        return GFElement(rng.randrange(self.p), self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()
CC = ComplexField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
