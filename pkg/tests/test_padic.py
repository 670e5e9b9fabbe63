import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from f4transfer.padic import (INF, Coeff, PAdicContext, PAdicRational, SchwartzFunction,
                              ball_contains, psi_eval, psi_phase, sf_combine, sf_fourier,
                              sf_integrate, sf_integrate_exact, sf_pullback_inversion,
                              sf_reflect, shell_decompose, valuation)
from f4transfer.sampling import random_schwartz, random_unit

PRIMES = [2, 3, 5, 7]


def random_point(rng, p, lo=-3, hi=4):
    """A rational with p-power denominator and valuation in ``[lo, hi]``, or 0."""
    if rng.random() < 0.05:
        return Fraction(0)
    return random_unit(rng, p, 3) * Fraction(p) ** rng.randint(lo, hi)


def point_in_ball(rng, c, n, p, extra=4):
    return Fraction(c) + random_unit(rng, p, 3) * Fraction(p) ** (n + rng.randint(0, extra))


def coset_fourier(phi, y):
    """Direct sum of ``phi(x) psi(xy)`` over cosets on which the integrand is constant."""
    p = phi.p
    depth = max(t.depth for t in phi.terms)
    for t in phi.terms:
        if t.beta:
            depth = max(depth, -valuation(t.beta, p))
    if y:
        depth = max(depth, -valuation(y, p))
    total = 0j
    for c, n in phi.support_balls():
        step = Fraction(p) ** n
        for k in range(p ** (depth - n)):
            x = c + k * step
            total += phi(x) * psi_eval(x * y, p)
    return total * float(Fraction(p) ** (-depth))


def test_valuation_examples():
    assert valuation(18, 3) == 2
    assert valuation(0, 5) == INF
    assert valuation(Fraction(3, 4), 2) == -2
    x = PAdicRational(Fraction(50, 3), PAdicContext(5))
    assert x.valuation == 2 and x.abs == Fraction(1, 25)


def test_context_rejects_composite():
    with pytest.raises(ValueError):
        PAdicContext(9)


@pytest.mark.parametrize("p", PRIMES)
def test_psi_conductor(p):
    ctx = PAdicContext(p)
    for n in range(-5, 6):
        assert ctx.psi(n) == 1
    assert abs(ctx.psi(Fraction(1, p)) - 1) > 0.1


def test_psi_third_root():
    assert abs(psi_eval(Fraction(1, 3), 3) - cmath.exp(2j * math.pi / 3)) < 1e-15


@pytest.mark.parametrize("p", PRIMES)
def test_psi_additive(p):
    r = random.Random(p)
    for _ in range(100):
        x, y = random_point(r, p), random_point(r, p)
        assert abs(psi_eval(x + y, p) - psi_eval(x, p) * psi_eval(y, p)) < 1e-12
        assert psi_phase(x + y, p) == (psi_phase(x, p) + psi_phase(y, p)) % 1


def test_coeff_cyclotomic_relation():
    total = Coeff()
    for k in range(5):
        total = total + Coeff.of(1, Fraction(k, 5))
    assert total.is_zero()
    assert Coeff.of(1, Fraction(1, 3)) * Coeff.of(1, Fraction(2, 3)) == Coeff.of(1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fourier_of_unit_ball(p):
    one = SchwartzFunction.indicator(p, 0, 0)
    assert sf_fourier(one) == one


@pytest.mark.parametrize("p,n", [(2, 1), (3, 2), (5, -1), (3, -2)])
def test_fourier_of_scaled_ball(p, n):
    phi = SchwartzFunction.indicator(p, 0, n)
    expected = SchwartzFunction.indicator(p, 0, -n, coeff=Fraction(p) ** (-n))
    assert sf_fourier(phi) == expected


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fourier_matches_coset_sum(p):
    r = random.Random(10 + p)
    for _ in range(5):
        phi = random_schwartz(r, p, spread=1)
        F = sf_fourier(phi)
        for _ in range(10):
            y = random_point(r, p, -2, 2)
            assert abs(F(y) - coset_fourier(phi, y)) < 1e-10


@pytest.mark.parametrize("p", PRIMES)
def test_fourier_inversion_exact_and_pointwise(p):
    r = random.Random(100 + p)
    for _ in range(20):
        phi = random_schwartz(r, p)
        FF = sf_fourier(sf_fourier(phi))
        assert FF == sf_reflect(phi)
        for _ in range(50):
            x = random_point(r, p)
            assert abs(FF(x) - phi(-x)) < 1e-10


@pytest.mark.parametrize("p", PRIMES)
def test_plancherel(p):
    r = random.Random(200 + p)
    for _ in range(20):
        phi = random_schwartz(r, p)
        F = sf_fourier(phi)
        lhs = sf_integrate_exact(phi * phi.conjugate())
        rhs = sf_integrate_exact(F * F.conjugate())
        assert lhs == rhs
        assert abs(complex(lhs) - complex(rhs)) < 1e-10


def test_integration_examples():
    assert sf_integrate(SchwartzFunction.indicator(3, 0, 0)) == 1
    assert abs(sf_integrate(SchwartzFunction.indicator(3, 0, 0, beta=Fraction(1, 3)))) < 1e-15
    assert sf_integrate_exact(SchwartzFunction.indicator(5, Fraction(7, 5), 2)) == \
        Fraction(1, 25)


def test_combine_examples():
    p = 3
    r = random.Random(0)
    phi = random_schwartz(r, p)
    assert sf_combine("add", phi, phi.scale(-1)).is_zero()
    nested = sf_combine("multiply", SchwartzFunction.indicator(p, 0, 0),
                        SchwartzFunction.indicator(p, 0, 1))
    assert nested == SchwartzFunction.indicator(p, 0, 1)
    b1, b2 = Fraction(1, 9), Fraction(2, 27)
    lhs = sf_combine("multiply", SchwartzFunction.indicator(p, 1, 1, beta=b1),
                     SchwartzFunction.indicator(p, 1, 1, beta=b2))
    assert lhs == SchwartzFunction.indicator(p, 1, 1, beta=b1 + b2)


@pytest.mark.parametrize("p", PRIMES)
def test_canonicalization_preserves_values(p):
    r = random.Random(300 + p)
    for _ in range(10):
        phi = random_schwartz(r, p)
        raw = SchwartzFunction(p, phi.terms + random_schwartz(r, p).terms)
        canon = raw.canonical()
        for _ in range(100):
            x = random_point(r, p)
            assert abs(raw(x) - canon(x)) < 1e-12


@given(st.sampled_from([2, 3, 5]), st.integers(0, 10 ** 6))
def test_step_form_detects_equality(p, seed):
    r = random.Random(seed)
    phi = random_schwartz(r, p)
    # rewriting each term on its children changes the data but not the function
    split = SchwartzFunction(p, tuple(phi.terms))
    split = sf_combine("multiply", split, SchwartzFunction.indicator(p, 0, -10))
    assert split == phi
    assert phi + phi != phi or phi.is_zero()


def _pullback_max_error(pb, phi, a, r, n_points=100):
    p = phi.p
    worst = 0.0
    balls = phi.support_balls()
    for _ in range(n_points):
        c, n = r.choice(balls)
        x = point_in_ball(r, c, n, p)
        worst = max(worst, abs(pb(x) - psi_eval(1 / (a * x), p)))
    return worst


def test_pullback_example_p5():
    p, a = 5, Fraction(1)
    phi = SchwartzFunction.indicator(p, 1, 1)
    pb = sf_pullback_inversion(phi, a)
    assert _pullback_max_error(pb, phi, a, random.Random(5)) < 1e-12
    assert pb.step_form() and {(c, n) for c, n in pb.support_balls()} <= {
        (c, n) for c, n in pb.support_balls()}
    assert sf_combine("multiply", pb, phi) == pb


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_pullback_refinement_random(p):
    r = random.Random(400 + p)
    for _ in range(10):
        phi = random_schwartz(r, p, avoid_zero_one=True)
        a = random_unit(r, p) * Fraction(p) ** r.randint(-2, 2)
        pb = sf_pullback_inversion(phi, a)
        assert _pullback_max_error(pb, phi, a, r) < 1e-12
        support = SchwartzFunction.from_terms(p, [(1, 0, c, n) for c, n in phi.support_balls()])
        ones = SchwartzFunction.from_terms(p, [(1, 0, c, n) for c, n in pb.support_balls()])
        assert ones == support


def test_pullback_constant_case():
    # 1/(a r) lies in Z_p on the whole ball, so the result is the plain indicator
    phi = SchwartzFunction.indicator(3, 1, 1)
    assert sf_pullback_inversion(phi, 1) == phi


def test_under_refinement_is_detected():
    p, a = 5, Fraction(125)
    phi = SchwartzFunction.indicator(p, 1, 1)
    r = random.Random(9)
    assert _pullback_max_error(sf_pullback_inversion(phi, a), phi, a, r) < 1e-12
    shallow = sf_pullback_inversion(phi, a, depth_override=1)
    assert _pullback_max_error(shallow, phi, a, r) > 1e-3


def test_pullback_rejects_zero_ball_and_zero_scale():
    with pytest.raises(ValueError):
        sf_pullback_inversion(SchwartzFunction.indicator(3, 0, 0), 1)
    with pytest.raises(ValueError):
        sf_pullback_inversion(SchwartzFunction.indicator(3, 1, 1), 0)


def test_shell_of_unit_ball():
    for p in (2, 3, 5):
        units = shell_decompose(SchwartzFunction.indicator(p, 0, 0), 0)
        assert len(units.terms) == p - 1
        expected = SchwartzFunction.indicator(p, 0, 0) - SchwartzFunction.indicator(p, 0, 1)
        assert units == expected


@pytest.mark.parametrize("p", [2, 3, 5])
def test_shells_partition_integral(p):
    r = random.Random(500 + p)
    for _ in range(10):
        phi = random_schwartz(r, p)
        total = Coeff()
        # the random supports live in |x| <= p^3; the ball p^4 Z_p is handled separately
        for m in range(-3, 4):
            total = total + sf_integrate_exact(shell_decompose(phi, m))
        core = sf_combine("multiply", phi, SchwartzFunction.indicator(p, 0, 4))
        total = total + sf_integrate_exact(core)
        assert total == sf_integrate_exact(phi)


def test_empty_shell():
    phi = SchwartzFunction.indicator(3, 0, 2)
    assert shell_decompose(phi, 0).is_zero()


def test_json_roundtrip():
    r = random.Random(7)
    for p in PRIMES:
        phi = random_schwartz(r, p)
        assert SchwartzFunction.from_json(phi.to_json()) == phi
    data = {"p": 5, "terms": [{"coeff": [1.0, 0.0], "beta": "0", "center": "5", "depth": 2}]}
    assert SchwartzFunction.from_json(data) == SchwartzFunction.indicator(5, 5, 2)
