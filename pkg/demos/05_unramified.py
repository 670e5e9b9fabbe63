"""
Unramified computations in Q(q^-1/2, alpha)
===========================================

Spherical values, matrix coefficients and the Cartan-sum zeta integral, as
exact rational functions of u = q^-1/2 and the Satake parameter t.
"""

# %%
from fractions import Fraction

from f4transfer.qsymbolic import (SphericalTable, cartan_identity, cartan_partial_sum,
                                  lx_sharp_report, macdonald_coeff, minrep_coeff)

print(SphericalTable.build(2, 5).values)
print("Macdonald m=1 at q=4, t=3:", macdonald_coeff(1).at_q(4, Fraction(3)))

# %% Minimal-representation coefficient: closed form against the series
for m in range(4):
    c = minrep_coeff(m, 3)
    print(m, float(c.closed_value), c.agrees, float(c.tail_bound))

# %% The Cartan sum under both cell conventions
for conv, check in cartan_identity().items():
    r = check.ratio
    print(conv, "equals L-product:", check.matches,
          " Z/L at q=9:", [round(float(r.at_q(9, Fraction(1, k))), 13) for k in (2, 3, 5)])
    print("   closed vs direct sum:", check.zeta.at_q(9, 0.5), cartan_partial_sum(conv, 9, 0.5))

# %% The displayed L_X# against its derivation chain
rep = lx_sharp_report()
print(rep.discrepancy_ratio)
