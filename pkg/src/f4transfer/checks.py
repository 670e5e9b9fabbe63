"""Randomized identity batteries driven by ``verify``.

Every check draws its instance from a ``random.Random`` derived from the run
seed and the check name, so a single failing check reproduces on its own.
A check returns ``None`` on success or a JSON-friendly counterexample.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .albert import (AlbertElement, adjoint, cross, cubic_norm, rank, rank1_construct,
                     trace_pairing)
from .fields import QQ
from .freudenthal import (FreudenthalVector, GL2Torus, GL2Unipotent, GL2Weyl, Levi,
                          V4V2Element, apply_dual_unipotent, apply_levi, apply_unipotent,
                          deidentify, identify, quartic_form, symplectic_form)
from .octonion import Octonion
from .padic import (sf_fourier, sf_integrate_exact, sf_pullback_inversion,
                    sf_reflect, psi_eval, valuation)
from .sampling import random_schwartz, random_unit


@dataclass
class Context:
    quartic: Callable = quartic_form


def _oct(rng):
    return Octonion.random(rng, QQ)


def _alb(rng):
    return AlbertElement.random(rng, QQ)


def _fv(rng):
    return FreudenthalVector.random(rng, QQ)


def _nonzero(rng):
    while True:
        t = QQ.random(rng)
        if t:
            return t


def _ser(*objs):
    out = []
    for o in objs:
        if hasattr(o, "to_json"):
            out.append(o.to_json())
        elif isinstance(o, Octonion):
            out.append([str(c) for c in o.coords()])
        else:
            out.append(str(o))
    return out


# algebra --------------------------------------------------------------------------

def check_octonion_composition(rng, ctx):
    x, y = _oct(rng), _oct(rng)
    if (x * y).norm() != x.norm() * y.norm():
        return _ser(x, y)


def check_octonion_alternativity(rng, ctx):
    x, y = _oct(rng), _oct(rng)
    if (x * x) * y != x * (x * y) or (y * x) * x != y * (x * x):
        return _ser(x, y)


def check_adjoint_adjoint(rng, ctx):
    X = _alb(rng)
    if adjoint(adjoint(X)) != X.scale(cubic_norm(X)):
        return _ser(X)


def check_trace_adjoint(rng, ctx):
    X = _alb(rng)
    if trace_pairing(X, adjoint(X)) != 3 * cubic_norm(X):
        return _ser(X)


def check_cross_self(rng, ctx):
    X = _alb(rng)
    if cross(X, X) != adjoint(X):
        return _ser(X)


def check_rank1_trace1(rng, ctx):
    while True:
        a = _nonzero(rng)
        y, z = _oct(rng), _oct(rng)
        X = rank1_construct(a, y, z)
        if X.trace() != 0:
            break
    X = X.scale(1 / X.trace())
    if (rank(X) != 1 or X.trace() != 1
            or X.y.norm() + X.z.norm() != X.a * (1 - X.a)):
        return _ser(X)


# Freudenthal module -----------------------------------------------------------------

def _form_check(kind, make):
    """Similitude check of one form: ``<gw1, gw2> = nu <w1, w2>`` or ``Q(gw) = nu^2 Q(w)``."""
    def run(rng, ctx):
        g_apply, nu, g_desc = make(rng)
        w1, w2 = _fv(rng), _fv(rng)
        if kind == "symplectic":
            ok = symplectic_form(g_apply(w1), g_apply(w2)) == nu * symplectic_form(w1, w2)
        else:
            ok = ctx.quartic(g_apply(w1)) == nu * nu * ctx.quartic(w1)
        if not ok:
            return {"element": g_desc, "vectors": _ser(w1, w2)}
    return run


def _unipotent(rng):
    A = _alb(rng)
    return (lambda w: apply_unipotent(A, w)), 1, _ser(A)


def _dual_unipotent(rng):
    A = _alb(rng)
    return (lambda w: apply_dual_unipotent(A, w)), 1, _ser(A)


def _levi(rng):
    i, t = rng.randint(1, 3), _nonzero(rng)
    return (lambda w: apply_levi(i, t, w)), Levi(i, t).nu, [i, str(t)]


def _gl2(rng):
    k = rng.randrange(3)
    if k == 0:
        g = GL2Torus(_nonzero(rng), _nonzero(rng))
    elif k == 1:
        g = GL2Unipotent(QQ.random(rng))
    else:
        g = GL2Weyl()
    return g.apply, g.nu, repr(g)


def check_identify_roundtrip(rng, ctx):
    w = _fv(rng)
    if identify(deidentify(w)) != w:
        return _ser(w)
    V = _alb(rng)
    V = V - AlbertElement.identity(QQ).scale(V.trace() / 3)
    W = _alb(rng)
    W = W - AlbertElement.identity(QQ).scale(W.trace() / 3)
    e = V4V2Element(tuple(QQ.random(rng) for _ in range(4)), V, W)
    if deidentify(identify(e)) != e:
        return _ser(V, W)


def check_levi_torus_consistency(rng, ctx):
    """``m1(t) m2(t) m3(t)`` equals the GL2 torus element ``diag(t^4, t^2)``."""
    t, w = _nonzero(rng), _fv(rng)
    lhs = apply_levi(1, t, apply_levi(2, t, apply_levi(3, t, w)))
    rhs = GL2Torus(t ** 4, t ** 2).apply(w)
    if lhs != rhs:
        return {"t": str(t), "w": _ser(w)}


# p-adic ------------------------------------------------------------------------------

def _prime(rng):
    return rng.choice([2, 3, 5, 7])


def check_fourier_inversion(rng, ctx):
    p = _prime(rng)
    phi = random_schwartz(rng, p)
    if sf_fourier(sf_fourier(phi)) != sf_reflect(phi):
        return phi.to_json()


def check_plancherel(rng, ctx):
    p = _prime(rng)
    phi = random_schwartz(rng, p)
    F = sf_fourier(phi)
    lhs = sf_integrate_exact(phi * phi.conjugate())
    rhs = sf_integrate_exact(F * F.conjugate())
    if lhs != rhs:
        return phi.to_json()


def check_pullback_pointwise(rng, ctx):
    p = rng.choice([3, 5, 7])
    phi = random_schwartz(rng, p, avoid_zero_one=True)
    a = random_unit(rng, p) * Fraction(p) ** rng.randint(-1, 1)
    pb = sf_pullback_inversion(phi, a)
    for c, n in phi.support_balls():
        for _ in range(5):
            x = c + random_unit(rng, p, 3) * Fraction(p) ** (n + rng.randint(0, 3))
            if valuation(x - c, p) < n:
                continue
            if abs(pb(x) - psi_eval(1 / (a * x), p)) > 1e-12:
                return {"phi": phi.to_json(), "a": str(a), "x": str(x)}


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable
    group: str
    cost: int = 1


CHECKS = (
    Check("octonion_composition", check_octonion_composition, "algebra"),
    Check("octonion_alternativity", check_octonion_alternativity, "algebra"),
    Check("adjoint_of_adjoint", check_adjoint_adjoint, "algebra"),
    Check("trace_pairing_adjoint", check_trace_adjoint, "algebra"),
    Check("cross_self_is_adjoint", check_cross_self, "algebra"),
    Check("rank1_trace1_relation", check_rank1_trace1, "algebra"),
    Check("unipotent_symplectic", _form_check("symplectic", _unipotent), "freudenthal"),
    Check("unipotent_quartic", _form_check("quartic", _unipotent), "freudenthal"),
    Check("dual_unipotent_symplectic", _form_check("symplectic", _dual_unipotent), "freudenthal"),
    Check("dual_unipotent_quartic", _form_check("quartic", _dual_unipotent), "freudenthal"),
    Check("levi_similitude_symplectic", _form_check("symplectic", _levi), "freudenthal"),
    Check("levi_similitude_quartic", _form_check("quartic", _levi), "freudenthal"),
    Check("gl2_similitude_symplectic", _form_check("symplectic", _gl2), "freudenthal"),
    Check("gl2_similitude_quartic", _form_check("quartic", _gl2), "freudenthal"),
    Check("identify_roundtrip", check_identify_roundtrip, "freudenthal"),
    Check("levi_torus_consistency", check_levi_torus_consistency, "freudenthal"),
    Check("fourier_inversion", check_fourier_inversion, "padic", cost=500),
    Check("plancherel", check_plancherel, "padic", cost=500),
    Check("pullback_pointwise", check_pullback_pointwise, "padic", cost=500),
)


def check_rng(seed: int, name: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass
class CheckResult:
    name: str
    iterations: int
    failures: int = 0
    counterexample: object = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def run_check(check: Check, seed: int, iterations: int, ctx: Context | None = None) -> CheckResult:
    ctx = ctx or Context()
    # expensive checks run iterations / cost times, but at least 5
    n = iterations if check.cost == 1 else min(iterations, max(5, iterations // check.cost))
    rng = check_rng(seed, check.name)
    res = CheckResult(check.name, n)
    for _ in range(n):
        bad = check.run(rng, ctx)
        if bad is not None:
            res.failures += 1
            if res.counterexample is None:
                res.counterexample = bad
    return res


def run_all(seed: int, iterations: int, ctx: Context | None = None, only=None) -> list:
    return [run_check(c, seed, iterations, ctx) for c in CHECKS
            if only is None or c.name in only or c.group in only]


def corrupted_quartic(w: FreudenthalVector):
    """The quartic form with the sign of ``4 y N(Y)`` flipped (mutation target)."""
    X, x, Y, y = w.X, w.x, w.Y, w.y
    inner = x * y - trace_pairing(X, Y)
    return (inner * inner + 4 * x * cubic_norm(X) - 4 * y * cubic_norm(Y)
            - 4 * trace_pairing(adjoint(X), adjoint(Y)))


MUTATIONS = {"quartic-sign": Context(quartic=corrupted_quartic)}
