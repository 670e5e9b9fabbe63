"""The 27-dimensional exceptional Jordan algebra of octonion-Hermitian 3x3 matrices.

An element is stored as three scalars and three octonions laid out as

    [[a,      z,      conj(y)],
     [conj(z), b,     x      ],
     [y,      conj(x), c     ]]

The adjoint, cubic norm, trace pairing and rank only use integral formulas,
so they work over every backend including GF(2).  The Jordan product and the
cross product divide by 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, Field, MixedFieldError, UnsupportedOperation
from .octonion import Octonion, oct_bilinear


@dataclass(frozen=True)
class AlbertElement:
    a: object
    b: object
    c: object
    x: Octonion
    y: Octonion
    z: Octonion

    @property
    def field(self) -> Field:
        return self.x.field

    @classmethod
    def zero(cls, field: Field = QQ) -> "AlbertElement":
        o = Octonion.zero(field)
        return cls(field.zero, field.zero, field.zero, o, o, o)

    @classmethod
    def identity(cls, field: Field = QQ) -> "AlbertElement":
        return cls.diag(1, 1, 1, field)

    @classmethod
    def diag(cls, a, b, c, field: Field = QQ) -> "AlbertElement":
        o = Octonion.zero(field)
        return cls(field(a), field(b), field(c), o, o, o)

    @classmethod
    def random(cls, rng, field: Field = QQ) -> "AlbertElement":
        return cls(field.random(rng), field.random(rng), field.random(rng),
                   Octonion.random(rng, field), Octonion.random(rng, field),
                   Octonion.random(rng, field))

    @classmethod
    def from_coords(cls, coords, field: Field = QQ) -> "AlbertElement":
        c = list(coords)
        if len(c) != 27:
            raise ValueError("an Albert element has 27 coordinates")
        return cls(field(c[0]), field(c[1]), field(c[2]),
                   Octonion.from_coords(c[3:11], field),
                   Octonion.from_coords(c[11:19], field),
                   Octonion.from_coords(c[19:27], field))

    def coords(self) -> tuple:
        return (self.a, self.b, self.c, *self.x.coords(), *self.y.coords(),
                *self.z.coords())

    def _check(self, other: "AlbertElement"):
        if self.field != other.field:
            raise MixedFieldError(f"elements over {self.field} and {other.field}")

    def __add__(self, other: "AlbertElement") -> "AlbertElement":
        self._check(other)
        return AlbertElement(self.a + other.a, self.b + other.b, self.c + other.c,
                             self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "AlbertElement") -> "AlbertElement":
        self._check(other)
        return AlbertElement(self.a - other.a, self.b - other.b, self.c - other.c,
                             self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "AlbertElement":
        return AlbertElement(-self.a, -self.b, -self.c, -self.x, -self.y, -self.z)

    def scale(self, s) -> "AlbertElement":
        s = self.field(s)
        return AlbertElement(s * self.a, s * self.b, s * self.c,
                             self.x.scale(s), self.y.scale(s), self.z.scale(s))

    def __rmul__(self, s) -> "AlbertElement":
        return self.scale(s)

    def trace(self):
        return self.a + self.b + self.c

    def is_zero(self) -> bool:
        return all(self.field.is_zero(c) for c in self.coords())

    def __eq__(self, other):
        if not isinstance(other, AlbertElement):
            return NotImplemented
        return self.field == other.field and self.coords() == other.coords()

    def __hash__(self):
        return hash(self.coords())

    def matrix(self) -> list:
        """The 3x3 octonion matrix, diagonal entries embedded as scalars."""
        f = self.field
        return [[Octonion.scalar(self.a, f), self.z, self.y.conj()],
                [self.z.conj(), Octonion.scalar(self.b, f), self.x],
                [self.y, self.x.conj(), Octonion.scalar(self.c, f)]]

    # serialization -------------------------------------------------------

    def to_json(self) -> dict:
        def s(v):
            return str(Fraction(v)) if not isinstance(v, complex) else repr(v)
        return {"a": s(self.a), "b": s(self.b), "c": s(self.c),
                "x": [s(v) for v in self.x.coords()],
                "y": [s(v) for v in self.y.coords()],
                "z": [s(v) for v in self.z.coords()]}

    @classmethod
    def from_json(cls, data, field: Field = QQ) -> "AlbertElement":
        if isinstance(data, str):
            data = json.loads(data)
        conv = (lambda v: field(Fraction(v))) if field.exact else field
        return cls(conv(data["a"]), conv(data["b"]), conv(data["c"]),
                   *(Octonion.from_coords([conv(v) for v in data[k]], field)
                     for k in ("x", "y", "z")))


def _matmul(m1, m2):
    return [[m1[i][0] * m2[0][j] + m1[i][1] * m2[1][j] + m1[i][2] * m2[2][j]
             for j in range(3)] for i in range(3)]


def _from_matrix(m) -> AlbertElement:
    # diagonal entries are scalar octonions (a == b, u = v = 0) for Hermitian input
    return AlbertElement(m[0][0].a, m[1][1].a, m[2][2].a, m[1][2], m[2][0], m[0][1])


def jordan_mul(X: AlbertElement, Y: AlbertElement) -> AlbertElement:
    """``X o Y = (XY + YX)/2`` computed with octonion matrix products."""
    X._check(Y)
    half = X.field.inverse_of(2)
    mx, my = X.matrix(), Y.matrix()
    p, q = _matmul(mx, my), _matmul(my, mx)
    s = [[(p[i][j] + q[i][j]).scale(half) for j in range(3)] for i in range(3)]
    return _from_matrix(s)


def trace_pairing(X: AlbertElement, Y: AlbertElement):
    """``(X, Y)`` by the integral coordinate formula; equals ``Tr(X o Y)`` when 2 is a unit."""
    X._check(Y)
    return (X.a * Y.a + X.b * Y.b + X.c * Y.c + oct_bilinear(X.x, Y.x)
            + oct_bilinear(X.y, Y.y) + oct_bilinear(X.z, Y.z))


def quadratic_form(X: AlbertElement):
    """``q(X) = Tr(X o X)/2``."""
    return jordan_mul(X, X).trace() * X.field.inverse_of(2)


def cubic_norm(X: AlbertElement):
    xyz = (X.x * X.y) * X.z
    return (X.a * X.b * X.c - X.a * X.x.norm() - X.b * X.y.norm()
            - X.c * X.z.norm() + xyz.trace())


def adjoint(X: AlbertElement) -> AlbertElement:
    a, b, c, x, y, z = X.a, X.b, X.c, X.x, X.y, X.z
    return AlbertElement(
        b * c - x.norm(),
        c * a - y.norm(),
        a * b - z.norm(),
        (y * z).conj() - x.scale(a),
        (z * x).conj() - y.scale(b),
        (x * y).conj() - z.scale(c))


def cross(A: AlbertElement, B: AlbertElement) -> AlbertElement:
    """Symmetric cross product ``((A+B)# - A# - B#)/2``."""
    A._check(B)
    half = A.field.inverse_of(2)
    return (adjoint(A + B) - adjoint(A) - adjoint(B)).scale(half)


def rank(X: AlbertElement) -> int:
    if X.is_zero():
        return 0
    if adjoint(X).is_zero():
        return 1
    if X.field.is_zero(cubic_norm(X)):
        return 2
    return 3


def rank1_construct(a, y: Octonion, z: Octonion, normalize: bool = False) -> AlbertElement:
    """Rank-one element with (1,1)-entry ``a`` and off-diagonal octonions ``y``, ``z``.

    Solving ``X# = 0`` with ``a != 0`` gives ``b = N(z)/a``, ``c = N(y)/a`` and
    ``x = conj(yz)/a``.  With ``normalize`` the result is rescaled to trace 1.
    """
    field = y.field
    if y.field != z.field:
        raise MixedFieldError("y and z over different fields")
    a = field(a)
    if field.is_zero(a):
        raise ValueError("rank1_construct needs a nonzero (1,1)-entry")
    inv_a = field.one / a
    X = AlbertElement(a, z.norm() * inv_a, y.norm() * inv_a,
                      (y * z).conj().scale(inv_a), y, z)
    if normalize:
        tr = X.trace()
        if field.is_zero(tr):
            raise ValueError("trace vanishes; cannot normalize to trace 1")
        X = X.scale(field.one / tr)
    return X


def require_char_not(field: Field, *primes: int, what: str = "operation"):
    for p in primes:
        if field.characteristic == p:
            raise UnsupportedOperation(f"{what} is unavailable in characteristic {p}")
