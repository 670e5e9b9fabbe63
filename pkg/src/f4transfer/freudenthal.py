"""The 56-dimensional Freudenthal module ``W_J = J + F + J + F``.

Vectors are ``(X, x, Y, y)`` with the symplectic form

    <w1, w2> = x1 y2 - x2 y1 + (X1, Y2) - (X2, Y1)

and quartic form

    Q(w) = (xy - (X, Y))^2 + 4x N(X) + 4y N(Y) - 4(X#, Y#).

Group elements are small frozen dataclasses with an ``apply`` method and a
``nu`` similitude factor: ``<g w1, g w2> = nu <w1, w2>`` and
``Q(g w) = nu^2 Q(w)``.

Conventions fixed here (each is checked by the invariance tests):

* ``n(A)`` uses ``2 (A x X)`` for the middle ``2AX`` term.
* ``n_dual(A) = flip o n(A) o flip`` with ``flip(X, x, Y, y) = (Y, y, X, x)``.
  The flip is anti-symplectic and preserves ``Q``, so the conjugate has
  ``nu = 1`` and no extra signs are needed.
* A Levi element ``m`` with ``N(m X) = lam N(X)`` acts as
  ``(m X, lam x, lam m*(Y), y)``, so ``nu = lam``.  Here ``m*`` is the inverse
  adjoint of ``m`` for the trace pairing.
* Cocharacters scale coordinates ``(a, b, c, x, y, z)`` by
  ``m1: (t^2, 1, 1, 1, t, t)``, ``m2: (1, t^2, 1, t, 1, t)``,
  ``m3: (1, 1, t^2, t, t, 1)``.
* On ``V4`` the upper unipotent with parameter ``s`` is
  ``(a + sd, 3s^2 a + b + 3sc + s^3 d, 2sa + c + s^2 d, d)``.  On
  ``V2 (x) J0``, with the vector ``v (x) X + u (x) Y``, it sends ``Y`` to
  ``Y - sX``.  The torus ``diag(x, y)`` scales ``X`` by ``y`` and ``Y`` by ``x``.
  The Weyl element sends ``(X, Y)`` to ``(-Y, X)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .albert import (AlbertElement, adjoint, cross, cubic_norm, require_char_not,
                     trace_pairing)
from .fields import QQ, Field, MixedFieldError


@dataclass(frozen=True)
class FreudenthalVector:
    X: AlbertElement
    x: object
    Y: AlbertElement
    y: object

    @property
    def field(self) -> Field:
        return self.X.field

    @classmethod
    def zero(cls, field: Field = QQ) -> "FreudenthalVector":
        Z = AlbertElement.zero(field)
        return cls(Z, field.zero, Z, field.zero)

    @classmethod
    def random(cls, rng, field: Field = QQ) -> "FreudenthalVector":
        return cls(AlbertElement.random(rng, field), field.random(rng),
                   AlbertElement.random(rng, field), field.random(rng))

    @classmethod
    def basis_x(cls, field: Field = QQ) -> "FreudenthalVector":
        """The vector ``(0, 1, 0, 0)``."""
        Z = AlbertElement.zero(field)
        return cls(Z, field.one, Z, field.zero)

    @classmethod
    def basis_y(cls, field: Field = QQ) -> "FreudenthalVector":
        """The vector ``(0, 0, 0, 1)``."""
        Z = AlbertElement.zero(field)
        return cls(Z, field.zero, Z, field.one)

    def __add__(self, other: "FreudenthalVector") -> "FreudenthalVector":
        if self.field != other.field:
            raise MixedFieldError("vectors over different fields")
        return FreudenthalVector(self.X + other.X, self.x + other.x,
                                 self.Y + other.Y, self.y + other.y)

    def __sub__(self, other: "FreudenthalVector") -> "FreudenthalVector":
        return self + other.scale(-1)

    def scale(self, s) -> "FreudenthalVector":
        s = self.field(s)
        return FreudenthalVector(self.X.scale(s), s * self.x, self.Y.scale(s), s * self.y)

    def __rmul__(self, s) -> "FreudenthalVector":
        return self.scale(s)

    def flip(self) -> "FreudenthalVector":
        return FreudenthalVector(self.Y, self.y, self.X, self.x)

    def to_json(self) -> dict:
        return {"X": self.X.to_json(), "x": str(self.x),
                "Y": self.Y.to_json(), "y": str(self.y)}

    @classmethod
    def from_json(cls, data, field: Field = QQ) -> "FreudenthalVector":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(AlbertElement.from_json(data["X"], field), field(data["x"]),
                   AlbertElement.from_json(data["Y"], field), field(data["y"]))


def symplectic_form(w1: FreudenthalVector, w2: FreudenthalVector):
    return (w1.x * w2.y - w2.x * w1.y
            + trace_pairing(w1.X, w2.Y) - trace_pairing(w2.X, w1.Y))


def quartic_form(w: FreudenthalVector):
    X, x, Y, y = w.X, w.x, w.Y, w.y
    inner = x * y - trace_pairing(X, Y)
    return (inner * inner + 4 * x * cubic_norm(X) + 4 * y * cubic_norm(Y)
            - 4 * trace_pairing(adjoint(X), adjoint(Y)))


def _freudenthal_field_ok(field: Field, what: str):
    require_char_not(field, 2, 3, what=what)


def apply_unipotent(A: AlbertElement, w: FreudenthalVector) -> FreudenthalVector:
    """``n(A)(X,x,Y,y) = (X + yA, x + (A,Y) + (A#,X) + y N(A), Y + 2 A x X + y A#, y)``."""
    _freudenthal_field_ok(w.field, "n(A)")
    X, x, Y, y = w.X, w.x, w.Y, w.y
    A_sharp = adjoint(A)
    return FreudenthalVector(
        X + A.scale(y),
        x + trace_pairing(A, Y) + trace_pairing(A_sharp, X) + y * cubic_norm(A),
        Y + cross(A, X).scale(2) + A_sharp.scale(y),
        y)


def apply_dual_unipotent(A: AlbertElement, w: FreudenthalVector) -> FreudenthalVector:
    _freudenthal_field_ok(w.field, "n_dual(A)")
    return apply_unipotent(A, w.flip()).flip()


LEVI_WEIGHTS = {
    1: (2, 0, 0, 0, 1, 1),
    2: (0, 2, 0, 1, 0, 1),
    3: (0, 0, 2, 1, 1, 0),
}


def levi_on_J(i: int, t, X: AlbertElement, dual: bool = False) -> AlbertElement:
    """Cocharacter ``m_i(t)`` on J, or its inverse adjoint ``m_i(t)*`` if ``dual``."""
    if i not in LEVI_WEIGHTS:
        raise ValueError(f"no cocharacter m_{i}")
    t = X.field(t)
    if X.field.is_zero(t):
        raise ValueError("t must be nonzero")
    s = [t ** k for k in LEVI_WEIGHTS[i]]
    if dual:
        s = [X.field.one / v for v in s]
    return AlbertElement(s[0] * X.a, s[1] * X.b, s[2] * X.c,
                         X.x.scale(s[3]), X.y.scale(s[4]), X.z.scale(s[5]))


def apply_levi(i: int, t, w: FreudenthalVector) -> FreudenthalVector:
    t = w.field(t)
    if w.field.is_zero(t):
        raise ValueError("t must be nonzero")
    lam = t * t
    return FreudenthalVector(levi_on_J(i, t, w.X), lam * w.x,
                             levi_on_J(i, t, w.Y, dual=True).scale(lam), w.y)


# group elements ---------------------------------------------------------------

@dataclass(frozen=True)
class Levi:
    i: int
    t: object

    @property
    def nu(self):
        return self.t * self.t

    def apply(self, w):
        return apply_levi(self.i, self.t, w)


@dataclass(frozen=True)
class Unipotent:
    A: AlbertElement
    nu: int = 1

    def apply(self, w):
        return apply_unipotent(self.A, w)


@dataclass(frozen=True)
class DualUnipotent:
    A: AlbertElement
    nu: int = 1

    def apply(self, w):
        return apply_dual_unipotent(self.A, w)


@dataclass(frozen=True)
class GL2Torus:
    x: object
    y: object

    def __post_init__(self):
        if self.x == 0 or self.y == 0:
            raise ValueError("torus parameters must be nonzero")

    @property
    def nu(self):
        return self.x * self.y

    def apply(self, w):
        return identify(apply_gl2(self, deidentify(w)))


@dataclass(frozen=True)
class GL2Unipotent:
    b: object
    nu: int = 1

    def apply(self, w):
        return identify(apply_gl2(self, deidentify(w)))


@dataclass(frozen=True)
class GL2Weyl:
    nu: int = 1

    def apply(self, w):
        return identify(apply_gl2(self, deidentify(w)))


GroupElement = Union[Levi, Unipotent, DualUnipotent, GL2Torus, GL2Unipotent, GL2Weyl]


# V4 + V2 (x) J0 -------------------------------------------------------------------

@dataclass(frozen=True)
class V4V2Element:
    """``(a,b,c,d) + v (x) v_part + u (x) u_part`` with traceless ``v_part``, ``u_part``."""

    v4: tuple
    v_part: AlbertElement
    u_part: AlbertElement

    def __post_init__(self):
        f = self.v_part.field
        if not (f.is_zero(self.v_part.trace()) and f.is_zero(self.u_part.trace())):
            raise ValueError("v_part and u_part must have trace 0")
        if len(self.v4) != 4:
            raise ValueError("v4 has four coordinates")

    @property
    def field(self) -> Field:
        return self.v_part.field


def identify(e: V4V2Element) -> FreudenthalVector:
    a, b, c, d = e.v4
    I = AlbertElement.identity(e.field)
    return FreudenthalVector(I.scale(a) + e.v_part, b, I.scale(c) + e.u_part, d)


def deidentify(w: FreudenthalVector) -> V4V2Element:
    f = w.field
    third = f.inverse_of(3)
    I = AlbertElement.identity(f)
    a = w.X.trace() * third
    c = w.Y.trace() * third
    return V4V2Element((a, w.x, c, w.y), w.X - I.scale(a), w.Y - I.scale(c))


def apply_gl2(g, e: V4V2Element) -> V4V2Element:
    f = e.field
    require_char_not(f, 3, what="GL2 action")
    a, b, c, d = e.v4
    V, U = e.v_part, e.u_part
    if isinstance(g, GL2Torus):
        x, y = f(g.x), f(g.y)
        return V4V2Element((y * a, x * x / y * b, x * c, y * y / x * d),
                           V.scale(y), U.scale(x))
    if isinstance(g, GL2Unipotent):
        s = f(g.b)
        v4 = (a + s * d, 3 * s * s * a + b + 3 * s * c + s * s * s * d,
              2 * s * a + c + s * s * d, d)
        return V4V2Element(v4, V, U - V.scale(s))
    if isinstance(g, GL2Weyl):
        return V4V2Element((-c, -d, a, b), -U, V)
    raise TypeError(f"not a GL2 generator: {g!r}")
