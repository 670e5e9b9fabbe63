"""Split octonions in Zorn vector-matrix form.

An octonion is a 2x2 "matrix" ``[[a, u], [v, b]]`` with scalar diagonal and
3-vector off-diagonal entries.  The product is

    (a, u; v, b)(a', u'; v', b') =
        (aa' + u.v',  a u' + b' u - v x v';  a' v + b v' + u x u',  bb' + v.u')

which has integral structure constants and makes the norm the determinant
``N(x) = ab - u.v``.  Flat coordinates (used for serialization and for the
finite-field tables) are ``(a, b, u1, u2, u3, v1, v2, v3)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ, Field, MixedFieldError


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


@dataclass(frozen=True)
class Octonion:
    a: object
    b: object
    u: tuple
    v: tuple
    field: Field = QQ

    @classmethod
    def from_coords(cls, coords, field: Field = QQ) -> "Octonion":
        c = [field(x) for x in coords]
        if len(c) != 8:
            raise ValueError("an octonion has 8 coordinates")
        return cls(c[0], c[1], tuple(c[2:5]), tuple(c[5:8]), field)

    @classmethod
    def zero(cls, field: Field = QQ) -> "Octonion":
        return cls.from_coords([0] * 8, field)

    @classmethod
    def one(cls, field: Field = QQ) -> "Octonion":
        return cls.from_coords([1, 1, 0, 0, 0, 0, 0, 0], field)

    @classmethod
    def scalar(cls, s, field: Field = QQ) -> "Octonion":
        s = field(s)
        z = field.zero
        return cls(s, s, (z, z, z), (z, z, z), field)

    @classmethod
    def random(cls, rng, field: Field = QQ) -> "Octonion":
        return cls(*(field.random(rng) for _ in range(2)),
                   tuple(field.random(rng) for _ in range(3)),
                   tuple(field.random(rng) for _ in range(3)), field)

    def coords(self) -> tuple:
        return (self.a, self.b, *self.u, *self.v)

    def _check(self, other: "Octonion"):
        if self.field != other.field:
            raise MixedFieldError(f"octonions over {self.field} and {other.field}")

    def __add__(self, other: "Octonion") -> "Octonion":
        self._check(other)
        return Octonion(self.a + other.a, self.b + other.b,
                        tuple(x + y for x, y in zip(self.u, other.u)),
                        tuple(x + y for x, y in zip(self.v, other.v)), self.field)

    def __sub__(self, other: "Octonion") -> "Octonion":
        self._check(other)
        return Octonion(self.a - other.a, self.b - other.b,
                        tuple(x - y for x, y in zip(self.u, other.u)),
                        tuple(x - y for x, y in zip(self.v, other.v)), self.field)

    def __neg__(self) -> "Octonion":
        return Octonion(-self.a, -self.b, tuple(-x for x in self.u),
                        tuple(-x for x in self.v), self.field)

    def scale(self, s) -> "Octonion":
        s = self.field(s)
        return Octonion(s * self.a, s * self.b, tuple(s * x for x in self.u),
                        tuple(s * x for x in self.v), self.field)

    def __mul__(self, other):
        if not isinstance(other, Octonion):
            return self.scale(other)
        return oct_mul(self, other)

    def __rmul__(self, s):
        return self.scale(s)

    def conj(self) -> "Octonion":
        return Octonion(self.b, self.a, tuple(-x for x in self.u),
                        tuple(-x for x in self.v), self.field)

    def norm(self):
        return self.a * self.b - _dot(self.u, self.v)

    def trace(self):
        return self.a + self.b

    def is_zero(self) -> bool:
        return all(self.field.is_zero(c) for c in self.coords())

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return self.field == other.field and self.coords() == other.coords()

    def __hash__(self):
        return hash(self.coords())

    def __repr__(self):
        return (f"Octonion(a={self.a}, b={self.b}, u={list(self.u)}, "
                f"v={list(self.v)})")


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    """Zorn product of two split octonions."""
    x._check(y)
    vxv = _cross(x.v, y.v)
    uxu = _cross(x.u, y.u)
    a = x.a * y.a + _dot(x.u, y.v)
    b = x.b * y.b + _dot(x.v, y.u)
    u = tuple(x.a * y.u[i] + y.b * x.u[i] - vxv[i] for i in range(3))
    v = tuple(y.a * x.v[i] + x.b * y.v[i] + uxu[i] for i in range(3))
    return Octonion(a, b, u, v, x.field)


def oct_bilinear(x: Octonion, y: Octonion):
    """Closed form of the polar form ``N(x+y) - N(x) - N(y)``."""
    x._check(y)
    return x.a * y.b + y.a * x.b - _dot(x.u, y.v) - _dot(y.u, x.v)


def oct_norm_trace_bilinear(x: Octonion, y: Octonion):
    """Return ``(N(x), Tr(x), B(x, y))``.

    ``B`` is computed by polarization and checked against the closed form;
    a mismatch means the arithmetic backend is broken.
    """
    polar = (x + y).norm() - x.norm() - y.norm()
    closed = oct_bilinear(x, y)
    if not x.field.is_zero(polar - closed):
        raise AssertionError(f"polarization mismatch: {polar} != {closed}")
    return x.norm(), x.trace(), polar
