"""Schwartz-Bruhat functions on Q_p as finite sums of modulated ball indicators.

A term ``(coeff, beta, center, depth)`` means

    coeff * psi(beta x) * 1[x in center + p^depth Z_p]

with ``psi(x) = exp(2 pi i {x}_p)``, the standard character of conductor Z_p.
Points of Q_p are represented by rationals.  Ball data and modulations are
exact ``Fraction``s; coefficients are :class:`Coeff`, an exact combination of
Gaussian-rational amplitudes times roots of unity ``e(theta)``.  Floating
point only enters in :meth:`Coeff.__complex__`.

The additive measure gives Z_p volume 1 (self-dual for this psi) and the
Fourier transform is ``F(f)(y) = int f(x) psi(xy) dx``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Iterable

INF = math.inf


# --- p-adic numbers as rationals ----------------------------------------------------

def valuation(x, p: int):
    """p-adic valuation of a rational; ``math.inf`` for 0."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def abs_p(x, p: int) -> Fraction:
    v = valuation(x, p)
    if v == INF:
        return Fraction(0)
    return Fraction(p) ** (-v)


def frac_part(x, p: int) -> Fraction:
    """The p-adic fractional part ``{x}_p``: the unique ``r`` in ``Z[1/p] & [0, 1)`` with ``x - r`` in Z_p."""
    x = Fraction(x)
    den = x.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    if k == 0:
        return Fraction(0)
    pk = p ** k
    A = x.numerator * pow(den, -1, pk) % pk
    return Fraction(A, pk)


def psi_phase(x, p: int) -> Fraction:
    """Exact phase of ``psi(x)``, i.e. ``psi(x) = exp(2 pi i * psi_phase(x))``."""
    return frac_part(x, p)


def psi_eval(x, p: int) -> complex:
    return cmath.exp(2j * math.pi * psi_phase(x, p))


@dataclass(frozen=True)
class PAdicContext:
    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")

    def valuation(self, x):
        return valuation(x, self.p)

    def abs(self, x) -> Fraction:
        return abs_p(x, self.p)

    def psi(self, x) -> complex:
        return psi_eval(x, self.p)


@dataclass(frozen=True)
class PAdicRational:
    value: Fraction
    context: PAdicContext

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def valuation(self):
        return valuation(self.value, self.context.p)

    @property
    def abs(self) -> Fraction:
        return abs_p(self.value, self.context.p)


# --- exact coefficients --------------------------------------------------------------

def _gauss(z) -> tuple:
    if isinstance(z, tuple):
        return Fraction(z[0]), Fraction(z[1])
    if isinstance(z, complex):
        return Fraction(z.real), Fraction(z.imag)
    return Fraction(z), Fraction(0)


@lru_cache(maxsize=None)
def _prime_of(d: int) -> int:
    k = 2
    while d % k:
        k += 1
    return k


@lru_cache(maxsize=1 << 16)
def _basis_expansion(theta: Fraction):
    """None if ``e(theta)`` is a basis element, else the phases summing to ``-e(theta)``."""
    if theta.denominator == 1:
        return None
    p = _prime_of(theta.denominator)
    top = Fraction(p - 1, p)
    if theta < top:
        return None
    return tuple(theta - top + Fraction(i, p) for i in range(p - 1))


class Coeff:
    """Exact element ``sum_theta (re + i im) * e(theta)`` of ``Q(i)(zeta_{p^inf})``.

    Phases have p-power denominators.  They are kept in the power basis of
    the cyclotomic field: a phase in ``[(p-1)/p, 1)`` is rewritten through
    ``sum_{i<p} e(theta + i/p) = 0``.  The basis is compatible across
    ``p^K``, so equality and :meth:`is_zero` are exact.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for theta, amp in terms.items():
                self._acc(Fraction(theta) % 1, _gauss(amp))

    def _acc(self, theta, amp):
        basis = _basis_expansion(theta)
        if basis is None:
            self._acc_basis(theta, amp)
        else:
            neg = (-amp[0], -amp[1])
            for th in basis:
                self._acc_basis(th, neg)

    def _acc_basis(self, theta, amp):
        re, im = self.terms.get(theta, (Fraction(0), Fraction(0)))
        re, im = re + amp[0], im + amp[1]
        if re == 0 and im == 0:
            self.terms.pop(theta, None)
        else:
            self.terms[theta] = (re, im)

    @classmethod
    def of(cls, value, phase=0) -> "Coeff":
        if isinstance(value, Coeff):
            return value.rotate(phase)
        return cls({Fraction(phase) % 1: _gauss(value)})

    def __add__(self, other) -> "Coeff":
        other = other if isinstance(other, Coeff) else Coeff.of(other)
        out = Coeff()
        out.terms = dict(self.terms)
        for th, amp in other.terms.items():
            out._acc(th, amp)
        return out

    __radd__ = __add__

    def __neg__(self) -> "Coeff":
        out = Coeff()
        out.terms = {th: (-re, -im) for th, (re, im) in self.terms.items()}
        return out

    def __sub__(self, other) -> "Coeff":
        other = other if isinstance(other, Coeff) else Coeff.of(other)
        return self + (-other)

    def __mul__(self, other) -> "Coeff":
        if not isinstance(other, Coeff):
            other = Coeff.of(other)
        out = Coeff()
        for t1, (r1, i1) in self.terms.items():
            for t2, (r2, i2) in other.terms.items():
                out._acc((t1 + t2) % 1, (r1 * r2 - i1 * i2, r1 * i2 + i1 * r2))
        return out

    __rmul__ = __mul__

    def rotate(self, phase) -> "Coeff":
        """Multiply by ``e(phase)``."""
        phase = Fraction(phase)
        out = Coeff()
        for th, amp in self.terms.items():
            out._acc((th + phase) % 1, amp)
        return out

    def conjugate(self) -> "Coeff":
        out = Coeff()
        for th, (re, im) in self.terms.items():
            out._acc((-th) % 1, (re, -im))
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __complex__(self) -> complex:
        total = 0j
        for th, (re, im) in sorted(self.terms.items()):
            total += complex(float(re), float(im)) * cmath.exp(2j * math.pi * th)
        return total

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coeff.of(other)
        if not isinstance(other, Coeff):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        parts = [f"({re}+{im}i)e({th})" for th, (re, im) in sorted(self.terms.items())]
        return "Coeff(" + " + ".join(parts or ["0"]) + ")"


# --- balls ----------------------------------------------------------------------------

def ball_center(c, n: int, p: int) -> Fraction:
    """Canonical center of ``c + p^n Z_p``: the representative in ``Z[1/p] & [0, p^n)``."""
    pn = Fraction(p) ** n
    return pn * frac_part(Fraction(c) / pn, p)


def ball_contains(c, n: int, x, p: int) -> bool:
    return valuation(Fraction(x) - Fraction(c), p) >= n


def ball_subset(c1, n1: int, c2, n2: int, p: int) -> bool:
    """Is ``c1 + p^n1 Z_p`` contained in ``c2 + p^n2 Z_p``?"""
    return n1 >= n2 and ball_contains(c2, n2, c1, p)


def ball_children(c, n: int, p: int, depth: int) -> list:
    """The ``p^(depth-n)`` sub-balls of depth ``depth`` (canonical centers)."""
    if depth < n:
        raise ValueError("children must be deeper")
    out = [Fraction(c)]
    for level in range(n, depth):
        step = Fraction(p) ** level
        out = [ball_center(x + k * step, level + 1, p) for x in out for k in range(p)]
    return out


def _path_split(c, n, target_c, target_n, p):
    """Split ``B(c, n)`` into ``B(target)`` plus the siblings along the path to it."""
    pieces = []
    cur = ball_center(c, n, p)
    for level in range(n, target_n):
        nxt = ball_center(target_c, level + 1, p)
        step = Fraction(p) ** level
        for k in range(p):
            child = ball_center(cur + k * step, level + 1, p)
            if child != nxt:
                pieces.append((child, level + 1))
        cur = nxt
    pieces.append((cur, target_n))
    return pieces


def disjoint_refinement(balls: Iterable[tuple], p: int) -> list:
    """Pairwise disjoint balls such that each input ball is a union of some of them."""
    leaves = {(ball_center(c, n, p), n) for c, n in balls}
    changed = True
    while changed:
        changed = False
        items = sorted(leaves, key=lambda b: (b[1], b[0]))
        for big in items:
            for small in items:
                if small != big and ball_subset(small[0], small[1], big[0], big[1], p):
                    leaves.discard(big)
                    leaves.update(_path_split(big[0], big[1], small[0], small[1], p))
                    changed = True
                    break
            if changed:
                break
    return sorted(leaves, key=lambda b: (b[1], b[0]))


# --- Schwartz functions ---------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    coeff: Coeff
    beta: Fraction
    center: Fraction
    depth: int


def _canonical_term(coeff: Coeff, beta, center, depth: int, p: int) -> Term:
    """Reduce center mod p^depth and modulation mod p^-depth, folding the phase into coeff."""
    beta, center = Fraction(beta), Fraction(center)
    c0 = ball_center(center, depth, p)
    # psi(beta x) is unchanged by moving the center inside the ball
    pm = Fraction(p) ** (-depth)
    b0 = pm * frac_part(beta / pm, p)
    # psi(beta x) = psi((beta - b0) c0) psi(b0 x) on the ball
    phase = psi_phase((beta - b0) * c0, p)
    return Term(coeff.rotate(phase), b0, c0, depth)


def _sort_key(t: Term, p: int):
    v = valuation(t.center, p)
    return (v if v != INF else 10 ** 9, t.center, t.depth, t.beta)


@dataclass(frozen=True, eq=False)
class SchwartzFunction:
    p: int
    terms: tuple = field(default_factory=tuple)

    # construction ----------------------------------------------------------------
    @classmethod
    def from_terms(cls, p: int, terms, canonical: bool = True) -> "SchwartzFunction":
        ts = []
        for t in terms:
            if isinstance(t, Term):
                ts.append(t)
            else:
                coeff, beta, center, depth = t
                ts.append(Term(Coeff.of(coeff), Fraction(beta), Fraction(center), int(depth)))
        f = cls(p, tuple(ts))
        return f.canonical() if canonical else f

    @classmethod
    def indicator(cls, p: int, center=0, depth: int = 0, coeff=1, beta=0) -> "SchwartzFunction":
        return cls.from_terms(p, [(coeff, beta, center, depth)])

    @classmethod
    def zero(cls, p: int) -> "SchwartzFunction":
        return cls(p, ())

    # canonical form ------------------------------------------------------------------
    def canonical(self) -> "SchwartzFunction":
        p = self.p
        leaves = disjoint_refinement([(t.center, t.depth) for t in self.terms], p)
        merged: dict = {}
        for t in self.terms:
            for lc, ln in leaves:
                if ball_subset(lc, ln, t.center, t.depth, p):
                    ct = _canonical_term(t.coeff, t.beta, lc, ln, p)
                    key = (ct.center, ct.depth, ct.beta)
                    merged[key] = merged.get(key, Coeff()) + ct.coeff
        terms = [Term(c, b, cen, d) for (cen, d, b), c in merged.items() if not c.is_zero()]
        terms.sort(key=lambda t: _sort_key(t, p))
        return SchwartzFunction(p, tuple(terms))

    def step_form(self) -> tuple:
        """Unique normal form: the maximal balls on which the function is a nonzero constant.

        Returns sorted ``(center, depth, value)`` triples with exact values.
        Two functions are equal iff their step forms are.
        """
        p = self.p
        groups: dict = {}
        for t in self.canonical().terms:
            groups.setdefault((t.center, t.depth), []).append(t)
        cells: dict = {}
        for (c, n), ts in groups.items():
            deep = max([n] + [-valuation(t.beta, p) for t in ts if t.beta != 0])
            for cj in ball_children(c, n, p, deep):
                value = Coeff()
                for t in ts:
                    value = value + t.coeff.rotate(psi_phase(t.beta * cj, p))
                if not value.is_zero():
                    cells[(cj, deep)] = value
        # merge complete sibling families with equal values, deepest first
        while True:
            by_parent: dict = {}
            for (c, n), v in cells.items():
                by_parent.setdefault((ball_center(c, n - 1, p), n - 1), []).append(((c, n), v))
            merged = False
            for parent, kids in by_parent.items():
                if len(kids) == p and all(v == kids[0][1] for _, v in kids):
                    for key, _ in kids:
                        del cells[key]
                    cells[parent] = kids[0][1]
                    merged = True
            if not merged:
                break
        return tuple(sorted(((c, n, v) for (c, n), v in cells.items()),
                            key=lambda e: (e[1], e[0])))

    def __eq__(self, other):
        if not isinstance(other, SchwartzFunction):
            return NotImplemented
        return self.p == other.p and self.step_form() == other.step_form()

    def __hash__(self):
        return hash((self.p, self.step_form()))

    def is_zero(self) -> bool:
        return not self.canonical().terms

    # evaluation ------------------------------------------------------------------------
    def __call__(self, x) -> complex:
        x = Fraction(x)
        total = 0j
        for t in self.terms:
            if ball_contains(t.center, t.depth, x, self.p):
                total += complex(t.coeff) * psi_eval(t.beta * x, self.p)
        return total

    def support_balls(self) -> list:
        return disjoint_refinement([(t.center, t.depth) for t in self.terms], self.p)

    # arithmetic ------------------------------------------------------------------------
    def _same(self, other):
        if self.p != other.p:
            raise ValueError(f"functions over Q_{self.p} and Q_{other.p}")

    def __add__(self, other: "SchwartzFunction") -> "SchwartzFunction":
        self._same(other)
        return SchwartzFunction(self.p, self.terms + other.terms).canonical()

    def __sub__(self, other: "SchwartzFunction") -> "SchwartzFunction":
        return self + other.scale(-1)

    def __neg__(self) -> "SchwartzFunction":
        return self.scale(-1)

    def scale(self, s) -> "SchwartzFunction":
        s = s if isinstance(s, Coeff) else Coeff.of(s)
        return SchwartzFunction(
            self.p, tuple(Term(t.coeff * s, t.beta, t.center, t.depth) for t in self.terms)
        ).canonical()

    def __mul__(self, other):
        if isinstance(other, SchwartzFunction):
            return sf_combine("multiply", self, other)
        return self.scale(other)

    __rmul__ = scale

    def conjugate(self) -> "SchwartzFunction":
        return sf_combine("conjugate", self)

    # serialization -------------------------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for t in self.terms:
            if len(t.coeff.terms) <= 1 and all(th == 0 for th in t.coeff.terms):
                z = complex(t.coeff)
                coeff = [z.real, z.imag]
            else:
                coeff = {"phases": [[str(th), str(re), str(im)]
                                    for th, (re, im) in sorted(t.coeff.terms.items())]}
            terms.append({"coeff": coeff, "beta": str(t.beta),
                          "center": str(t.center), "depth": t.depth})
        return {"p": self.p, "terms": terms}

    @classmethod
    def from_json(cls, data) -> "SchwartzFunction":
        if isinstance(data, str):
            data = json.loads(data)
        if "p" not in data or "terms" not in data:
            raise ValueError("SchwartzFunction JSON needs 'p' and 'terms'")
        terms = []
        for t in data["terms"]:
            c = t["coeff"]
            if isinstance(c, dict):
                coeff = Coeff({Fraction(th): (Fraction(re), Fraction(im))
                               for th, re, im in c["phases"]})
            elif isinstance(c, (list, tuple)):
                coeff = Coeff.of((Fraction(c[0]), Fraction(c[1])))
            else:
                coeff = Coeff.of(Fraction(c))
            terms.append(Term(coeff, Fraction(t.get("beta", "0")),
                              Fraction(t["center"]), int(t["depth"])))
        return cls.from_terms(int(data["p"]), terms)


def sf_fourier(phi: SchwartzFunction) -> SchwartzFunction:
    """``F(phi)(y) = int phi(x) psi(xy) dx``, term by term in closed form.

    ``coeff psi(beta x) 1[c + p^n Z_p]`` goes to
    ``coeff p^-n psi(c beta) psi(c y) 1[-beta + p^-n Z_p]``.
    """
    p = phi.p
    out = []
    for t in phi.terms:
        scale = Fraction(p) ** (-t.depth)
        coeff = (t.coeff * scale).rotate(psi_phase(t.center * t.beta, p))
        out.append(Term(coeff, t.center, -t.beta, -t.depth))
    return SchwartzFunction(p, tuple(out)).canonical()


def sf_reflect(phi: SchwartzFunction) -> SchwartzFunction:
    """``x -> phi(-x)``; Fourier inversion reads ``F(F(phi)) = sf_reflect(phi)``."""
    return SchwartzFunction(
        phi.p, tuple(Term(t.coeff, -t.beta, -t.center, t.depth) for t in phi.terms)).canonical()


def sf_integrate_exact(phi: SchwartzFunction) -> Coeff:
    total = Coeff()
    for t in phi.canonical().terms:
        # after canonicalization beta is reduced mod p^-depth: the character
        # integrates to zero on the ball unless it is trivial there
        if t.beta == 0:
            total = total + t.coeff * (Fraction(phi.p) ** (-t.depth))
    return total


def sf_integrate(phi: SchwartzFunction) -> complex:
    return complex(sf_integrate_exact(phi))


def _multiply(f: SchwartzFunction, g: SchwartzFunction) -> SchwartzFunction:
    f._same(g)
    p = f.p
    out = []
    for s in f.terms:
        for t in g.terms:
            if ball_subset(s.center, s.depth, t.center, t.depth, p):
                c, n = s.center, s.depth
            elif ball_subset(t.center, t.depth, s.center, s.depth, p):
                c, n = t.center, t.depth
            else:
                continue
            out.append(Term(s.coeff * t.coeff, s.beta + t.beta, c, n))
    return SchwartzFunction(p, tuple(out)).canonical()


def sf_combine(op: str, *args) -> SchwartzFunction:
    """Class-closed operations: ``add``, ``scale``, ``multiply``, ``conjugate``."""
    if op == "add":
        out = args[0]
        for g in args[1:]:
            out = out + g
        return out.canonical()
    if op == "scale":
        f, s = args
        return f.scale(s)
    if op == "multiply":
        out = args[0]
        for g in args[1:]:
            out = _multiply(out, g)
        return out
    if op == "conjugate":
        (f,) = args
        return SchwartzFunction(
            f.p, tuple(Term(t.coeff.conjugate(), -t.beta, t.center, t.depth)
                       for t in f.terms)).canonical()
    raise ValueError(f"unknown operation {op!r}")


# --- composition with inversion ------------------------------------------------------

def pullback_depth(center, depth: int, a, p: int) -> int:
    """Smallest depth at which ``psi(1/(a r))`` is linear-modulated on every sub-ball.

    On ``c + p^m Z_p`` with ``m > v(c)`` the tail of
    ``1/(ar) = (1/(ac)) sum_j (-(r-c)/c)^j`` past ``j = 1`` has valuation at
    least ``2m - v(a) - 3v(c)``; it lies in Z_p once ``2m >= v(a) + 3v(c)``.
    """
    vc = valuation(center, p)
    if not depth > vc:
        raise ValueError("ball contains 0")
    va = valuation(a, p)
    need = -((-(va + 3 * vc)) // 2)
    return max(depth, need)


def sf_pullback_inversion(phi: SchwartzFunction, a, depth_override: int | None = None
                          ) -> SchwartzFunction:
    """In-class representation of ``x -> psi(1/(a x))`` restricted to ``supp(phi)``.

    Each support ball is cut to the depth given by :func:`pullback_depth`
    and on each piece ``psi(1/(ar)) = psi(2/(ac)) psi(-r/(a c^2))``.
    ``depth_override`` forces a shallower cut; only for demonstrating what
    under-refinement does.
    """
    a = Fraction(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    p = phi.p
    out = []
    for c, n in phi.support_balls():
        need = pullback_depth(c, n, a, p)
        if depth_override is not None:
            need = max(n, depth_override)
        for cj in ball_children(c, n, p, need):
            phase = psi_phase(2 / (a * cj), p)
            out.append(Term(Coeff.of(1, phase), -1 / (a * cj * cj), cj, need))
    return SchwartzFunction(p, tuple(out)).canonical()


def shell_indicator(p: int, m: int) -> SchwartzFunction:
    """Indicator of ``{|x|_p = p^m}`` as ``p - 1`` cosets of ``p^(1-m) Z_p``."""
    unit = Fraction(p) ** (-m)
    return SchwartzFunction.from_terms(p, [(1, 0, k * unit, 1 - m) for k in range(1, p)])


def shell_decompose(phi: SchwartzFunction, m: int) -> SchwartzFunction:
    return _multiply(phi, shell_indicator(phi.p, m))


def support_shell_range(phi: SchwartzFunction):
    """``(m_lo, m_hi)`` bounding ``|x| = p^m`` over the support, or None if ``0`` is in it.

    ``m_hi`` is the largest shell met; ``m_lo`` the smallest (None if the
    support touches 0, in which case the shells are unbounded below).
    """
    p = phi.p
    if not phi.terms:
        return None
    ms = []
    touches_zero = False
    for c, n in phi.support_balls():
        vc = valuation(c, p)
        if vc >= n:
            touches_zero = True
            ms.append(-n)
        else:
            ms.append(-vc)
    return (None if touches_zero else min(ms)), max(ms)
