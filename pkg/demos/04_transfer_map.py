"""
The transfer operator
=====================

Two iterated Fourier transforms, evaluated exactly, against a brute-force
coset sum that never uses the Fourier engine.
"""

# %%
import random
from fractions import Fraction

from f4transfer.padic import SchwartzFunction
from f4transfer.sampling import random_transfer_instance
from f4transfer.transfer import (TransferInput, stabilization_profile, transfer_bounds,
                                 transfer_eval, transfer_oracle)

phi = TransferInput(SchwartzFunction.indicator(3, 3, 2))
for a in [1, 3, Fraction(1, 3), 9]:
    res = transfer_eval(phi, a)
    print(f"a = {a!s:>4}: {res.value.real:.10g}  shells {res.shells_used}")

# %% The oracle at its certified parameters
b = transfer_bounds(phi.phi, 1)
print(b)
value, certified = transfer_oracle(phi, 1, b["shell_lo"], b["shell_hi"], b["coset_depth"])
print(value, certified)

# %% Random instances across primes
rng = random.Random(3)
for p in (3, 5, 7):
    phi_r, a = random_transfer_instance(rng, p, budget=1500)
    b = transfer_bounds(phi_r.phi, a)
    o, _ = transfer_oracle(phi_r, a, b["shell_lo"], b["shell_hi"], b["coset_depth"])
    e = transfer_eval(phi_r, a).value
    print(p, a, f"{e:.6g}", f"|delta| = {abs(o - e):.1e}")

# %% Truncating the outer variable: the values settle by the predicted index
deep = TransferInput(SchwartzFunction.indicator(3, 3, 4))
prof = stabilization_profile(deep, 1)
for n, v in enumerate(prof.values):
    print(n, f"{v.real:.6f}")
print("first stable", prof.first_stable, "predicted", prof.predicted)
