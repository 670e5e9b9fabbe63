"""Exact evaluation of the transfer operator as two iterated Fourier transforms.

For a test function ``phi`` on ``F minus {0, 1}`` and ``a != 0``,

    t(phi)(a) = |a|^-3  int_F  int_F phi(t) psi(t/k) dt  psi(k/a) |k|^-4 dk.

With ``k = 1/r`` the outer integral becomes
``|a|^-3 int F(phi)(r) psi(1/(a r)) |r|^2 dr`` over the compact support of the
Fourier transform.  :func:`transfer_eval` computes it exactly, shell by shell;
:func:`transfer_oracle` evaluates the un-substituted double integral

    |a|^-6  int_F  int_F phi(t) psi(r t / a) dt  psi(1/r) |r|^2 dr

by brute-force coset sums and is independent of the Fourier engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic import (Coeff, PAdicContext, PAdicRational, SchwartzFunction, ball_children, ball_contains,
                    psi_phase, sf_fourier, sf_pullback_inversion, shell_indicator,
                    valuation)


class TransferDomainError(ValueError):
    """The test function's support meets 0 or 1."""


@dataclass(frozen=True)
class TransferInput:
    phi: SchwartzFunction

    def __post_init__(self):
        p = self.phi.p
        for c, n in self.phi.support_balls():
            if valuation(c, p) >= n:
                raise TransferDomainError(f"ball {c} + {p}^{n} Z_{p} contains 0")
            if ball_contains(c, n, 1, p):
                raise TransferDomainError(f"ball {c} + {p}^{n} Z_{p} contains 1")

    @property
    def context(self) -> PAdicContext:
        return PAdicContext(self.phi.p)

    @classmethod
    def from_json(cls, data) -> "TransferInput":
        return cls(SchwartzFunction.from_json(data))


def _point(a) -> Fraction:
    return a.value if isinstance(a, PAdicRational) else Fraction(a)


@dataclass(frozen=True)
class TransferResult:
    a: PAdicRational
    value: complex
    exact: Coeff
    shells_used: tuple
    certified_stable: bool


def _abs_pow(x: Fraction, p: int, e: int) -> Fraction:
    """``|x|_p ** e``."""
    return Fraction(p) ** (-valuation(x, p) * e)


def _integrate_away_from_zero(G: SchwartzFunction, a: Fraction) -> Coeff:
    """``int G(r) psi(1/(ar)) |r|^2 dr`` when no support ball of G contains 0."""
    p = G.p
    if not G.terms:
        return Coeff()
    inv = sf_pullback_inversion(G, a)
    total = Coeff()
    prod = G * inv
    # |r| is constant on each canonical ball that avoids 0
    for t in prod.terms:
        if t.beta == 0:
            weight = _abs_pow(t.center, p, 2) * Fraction(p) ** (-t.depth)
            total = total + t.coeff * weight
    return total


def tail_start(G: SchwartzFunction, a: Fraction) -> int:
    """Valuation ``K`` such that every shell ``v(r) >= K`` contributes exactly 0.

    Near 0 the transform is ``psi(beta r)`` times a constant on a ball
    ``p^n Z_p``.  Once ``v(r) >= -v(beta)`` the modulation is trivial and
    ``int_{v(r)=k} psi(1/(ar)) dr`` vanishes for ``k >= 2 - v(a)`` (it is the
    integral of a nontrivial character over a shell).
    """
    p = G.p
    K = 2 - valuation(a, p)
    for t in G.terms:
        if valuation(t.center, p) >= t.depth:
            K = max(K, t.depth)
            if t.beta != 0:
                K = max(K, -valuation(t.beta, p))
    return K


def _split_at_zero(G: SchwartzFunction):
    """Terms whose ball contains 0, and the rest."""
    p = G.p
    near, away = [], []
    for t in G.terms:
        (near if valuation(t.center, p) >= t.depth else away).append(t)
    return near, away


def transfer_eval(phi, a) -> TransferResult:
    phi = phi if isinstance(phi, TransferInput) else TransferInput(phi)
    a = _point(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    p = phi.phi.p
    G = sf_fourier(phi.phi)
    near, away = _split_at_zero(G)
    total = _integrate_away_from_zero(SchwartzFunction(p, tuple(away)), a)
    shells = []
    if near:
        n0 = min(t.depth for t in near)
        K = tail_start(G, a)
        near_f = SchwartzFunction(p, tuple(near))
        for k in range(n0, K):
            piece = near_f * shell_indicator(p, -k)
            total = total + _integrate_away_from_zero(piece, a)
            shells.append(k)
    value = total * _abs_pow(a, p, -3)
    rng = (min(shells), max(shells)) if shells else ()
    return TransferResult(PAdicRational(a, phi.context), complex(value), value, rng, True)


def transfer_bounds(phi: SchwartzFunction, a) -> dict:
    """Shell range and relative coset depth that make :func:`transfer_oracle` exact.

    ``F(phi)`` vanishes outside ``|y| <= p^radius`` and is constant on cosets
    of ``p^const Z_p``.  In ``r = a y`` the integrand therefore vanishes below
    ``shell_lo``, and shells ``v(r) >= max(2, v(a) + const)`` integrate
    ``psi(1/r)`` against a constant, which is exactly 0.
    """
    p = phi.p
    a = _point(a)
    va = valuation(a, p)
    terms = phi.canonical().terms
    if not terms:
        return {"shell_lo": 0, "shell_hi": 0, "coset_depth": 1, "radius": 0, "const": 0}
    radius = max(max(t.depth, -valuation(t.beta, p) if t.beta != 0 else t.depth)
                 for t in terms)
    const = max(max(-t.depth, -valuation(t.center, p)) for t in terms)
    shell_lo = va - radius
    shell_hi = max(2, va + const) - 1
    return {"shell_lo": shell_lo, "shell_hi": shell_hi,
            "coset_depth": _depth_needed(shell_lo, shell_hi, va + const),
            "radius": radius, "const": const}


def _depth_needed(lo: int, hi: int, const_r: int) -> int:
    # psi(1/r) is constant on r + p^(2k) and F(phi)(r/a) on r + p^const_r
    return max([1] + [max(k, const_r - k) for k in range(lo, hi + 1)])


def oracle_work(phi: SchwartzFunction, a, bounds: dict | None = None) -> int:
    """Number of outer cosets :func:`transfer_oracle` visits at the certified parameters."""
    phi = phi.phi if isinstance(phi, TransferInput) else phi
    b = bounds or transfer_bounds(phi, a)
    p = phi.p
    return (b["shell_hi"] - b["shell_lo"] + 1) * (p - 1) * p ** (b["coset_depth"] - 1)


class _PhaseSum:
    """Accumulator for ``sum w_j e(theta_j)``; reduced exactly by :class:`Coeff` at the end."""

    def __init__(self):
        self.terms: dict = {}

    def add(self, theta: Fraction, re: Fraction, im: Fraction):
        theta = theta % 1
        r0, i0 = self.terms.get(theta, (Fraction(0), Fraction(0)))
        self.terms[theta] = (r0 + re, i0 + im)

    def exact(self) -> Coeff:
        return Coeff(self.terms)


def _inner_bruteforce(phi: SchwartzFunction, s: Fraction, out: _PhaseSum,
                      outer_phase: Fraction, weight: Fraction):
    """Adds ``weight e(outer_phase) int phi(t) psi(s t) dt`` to ``out``.

    The t-integral is a coset sum at a depth where the integrand is constant.
    """
    p = phi.p
    terms = phi.terms
    depth = max(t.depth for t in terms)
    for t in terms:
        if t.beta != 0:
            depth = max(depth, -valuation(t.beta, p))
    if s != 0:
        depth = max(depth, -valuation(s, p))
    w = weight * Fraction(p) ** (-depth)
    for c, n in phi.support_balls():
        for x in ball_children(c, n, p, depth):
            base = outer_phase + psi_phase(s * x, p)
            for t in terms:
                if ball_contains(t.center, t.depth, x, p):
                    th0 = base + psi_phase(t.beta * x, p)
                    for th, (re, im) in t.coeff.terms.items():
                        out.add(th0 + th, w * re, w * im)


def transfer_oracle(phi, a, shell_lo: int, shell_hi: int, coset_depth: int,
                    exact: bool = False):
    """Brute-force Riemann sum; returns ``(value, certified)``.

    The r-line is cut into shells ``v(r) = k`` for ``shell_lo <= k <= shell_hi``
    and each shell into cosets of ``p^(k + coset_depth) Z_p``.  The integrand
    is evaluated at coset representatives and weighted by exact coset
    measures; the sum is kept exact per phase and rounded once.  ``certified``
    says whether the parameters reach the bounds of :func:`transfer_bounds`.
    With ``exact`` the value is returned as a :class:`Coeff`.
    """
    phi = phi.phi if isinstance(phi, TransferInput) else phi
    a = _point(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    p = phi.p
    phi = phi.canonical()
    if not phi.terms:
        return (Coeff() if exact else 0j), True
    need = transfer_bounds(phi, a)
    certified = (shell_lo <= need["shell_lo"] and shell_hi >= need["shell_hi"]
                 and coset_depth >= _depth_needed(shell_lo, shell_hi,
                                                  valuation(a, p) + need["const"]))
    total = _PhaseSum()
    scale = _abs_pow(a, p, -6)
    for k in range(shell_lo, shell_hi + 1):
        depth = k + max(coset_depth, 1)
        # |r|^2 times the coset measure
        weight = scale * Fraction(p) ** (-2 * k - depth)
        for u in range(1, p):
            for r in ball_children(u * Fraction(p) ** k, k + 1, p, depth):
                _inner_bruteforce(phi, r / a, total, psi_phase(1 / r, p), weight)
    value = total.exact()
    return (value if exact else complex(value)), certified


def orbital_limit_probe(phi, a, n: int) -> complex:
    """Transfer with the outer variable truncated to ``|r| <= p^n``.

    For ``n >= predicted_stable_index(phi)`` this equals ``transfer_eval``.
    """
    phi = phi if isinstance(phi, TransferInput) else TransferInput(phi)
    a = _point(a)
    if n < 0:
        raise ValueError("n must be >= 0")
    p = phi.phi.p
    G = sf_fourier(phi.phi)
    cut = G * SchwartzFunction.indicator(p, 0, -n)
    near, away = _split_at_zero(cut)
    total = _integrate_away_from_zero(SchwartzFunction(p, tuple(away)), a)
    if near:
        near_f = SchwartzFunction(p, tuple(near))
        for k in range(min(t.depth for t in near), tail_start(cut, a)):
            total = total + _integrate_away_from_zero(near_f * shell_indicator(p, -k), a)
    return complex(total * _abs_pow(a, p, -3))


def predicted_stable_index(phi) -> int:
    """Smallest ``n`` with ``supp F(phi)`` inside ``p^-n Z_p``."""
    phi = phi.phi if isinstance(phi, TransferInput) else phi
    p = phi.p
    G = sf_fourier(phi)
    if not G.terms:
        return 0
    return max(0, max(-min(valuation(t.center, p), t.depth) for t in G.terms))


@dataclass(frozen=True)
class Stabilization:
    values: tuple
    first_stable: int
    predicted: int

    @property
    def within_prediction(self) -> bool:
        return self.first_stable <= self.predicted


def stabilization_profile(phi, a, extra: int = 3) -> Stabilization:
    """Probe values for ``n = 0 .. n0 + extra`` and the first index after which they are constant."""
    phi = phi if isinstance(phi, TransferInput) else TransferInput(phi)
    n0 = predicted_stable_index(phi)
    vals = tuple(orbital_limit_probe(phi, a, n) for n in range(n0 + extra + 1))
    first = len(vals) - 1
    while first > 0 and abs(vals[first - 1] - vals[-1]) < 1e-12:
        first -= 1
    return Stabilization(vals, first, n0)
