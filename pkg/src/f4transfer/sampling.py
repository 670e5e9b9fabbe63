"""Seeded random instances shared by the verification batteries, tests and demos."""

from __future__ import annotations

import random
from fractions import Fraction

from .padic import SchwartzFunction, ball_contains, valuation
from .transfer import TransferInput, oracle_work


def random_unit(rng: random.Random, p: int, span: int = 2) -> Fraction:
    """A rational of valuation 0 with numerator below ``p^span``."""
    while True:
        n = rng.randint(1, p ** span - 1)
        d = rng.choice([1, 1, 2, 3, 4])
        if n % p and d % p:
            return Fraction(n, d)


def random_schwartz(rng: random.Random, p: int, n_terms: int = 3, spread: int = 2,
                    avoid_zero_one: bool = False) -> SchwartzFunction:
    """Sum of modulated ball indicators with small valuations and depths.

    Centers have valuation in ``[-spread, spread]``, depths exceed the center
    valuation by 1 or 2, and modulations are trivial or of conductor one
    step beyond the ball.
    """
    terms = []
    for _ in range(rng.randint(1, n_terms)):
        while True:
            e = rng.randint(-spread, spread)
            depth = e + rng.randint(1, 2)
            if rng.random() < 0.2:
                c, depth = Fraction(0), rng.randint(-spread, spread)
            else:
                c = random_unit(rng, p) * Fraction(p) ** e
            bad = valuation(c, p) >= depth or ball_contains(c, depth, 1, p)
            if not (avoid_zero_one and bad):
                break
        k = rng.randint(0, 1)
        beta = Fraction(rng.randint(0, p - 1), p ** k) * Fraction(p) ** (-depth)
        coeff = (rng.randint(-3, 3), rng.randint(-3, 3))
        if coeff == (0, 0):
            coeff = (1, 0)
        terms.append((coeff, beta, c, depth))
    return SchwartzFunction.from_terms(p, terms)


def random_transfer_instance(rng: random.Random, p: int, budget: int = 4000):
    """``(TransferInput, a)`` whose certified oracle visits at most ``budget`` cosets."""
    while True:
        phi = random_schwartz(rng, p, n_terms=3, spread=1, avoid_zero_one=True)
        a = Fraction(rng.randint(1, p - 1) if p > 2 else 1) * Fraction(p) ** rng.randint(-1, 1)
        if rng.random() < 0.5:
            a *= random_unit(rng, p, 1)
        if not phi.terms:
            continue
        if oracle_work(phi, a) <= budget:
            return TransferInput(phi), a
