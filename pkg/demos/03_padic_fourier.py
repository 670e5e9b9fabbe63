"""
Schwartz functions on Q_p
=========================

Modulated ball indicators with exact Fourier transforms.
"""

# %%
from fractions import Fraction

from f4transfer.padic import (SchwartzFunction, sf_fourier, sf_integrate, sf_pullback_inversion,
                              sf_reflect, psi_eval)

p = 3
phi = SchwartzFunction.from_terms(p, [(1, 0, 3, 2), ((0, 2), Fraction(1, 9), 5, 2)])
F = sf_fourier(phi)
for t in F.terms:
    print(f"center {t.center!s:>6}  depth {t.depth:>3}  beta {t.beta!s:>6}  coeff {complex(t.coeff):.4f}")

# %% Inversion holds on the term data itself, Plancherel on the integrals
print("F(F(phi)) == phi(-x):", sf_fourier(F) == sf_reflect(phi))
print("|phi|^2:", sf_integrate(phi * phi.conjugate()))
print("|F phi|^2:", sf_integrate(F * F.conjugate()))

# %% Composing with inversion: psi(1/(a x)) is linear-modulated on fine enough balls
a = Fraction(9)
pb = sf_pullback_inversion(SchwartzFunction.indicator(p, 1, 1), a)
print(len(pb.terms), "pieces")
for x in [Fraction(4), Fraction(5, 2), Fraction(-29)]:
    print(x, abs(pb(x) - psi_eval(1 / (a * x), p)))
