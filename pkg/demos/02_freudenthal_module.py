"""
The 56-dimensional module
=========================

Symplectic and quartic forms on J + F + J + F, and how the explicit group
elements scale them.
"""

# %%
import random

from f4transfer import AlbertElement, FreudenthalVector, quartic_form, symplectic_form
from f4transfer.freudenthal import (GL2Torus, GL2Unipotent, GL2Weyl, Levi, apply_dual_unipotent,
                                    apply_unipotent)
from f4transfer.fields import QQ

rng = random.Random(1)
w1, w2 = FreudenthalVector.random(rng), FreudenthalVector.random(rng)
print("<w1, w2> =", symplectic_form(w1, w2))
print("Q(w1)    =", quartic_form(w1))

# %% Unipotents preserve both forms
A = AlbertElement.random(rng)
for name, g in [("n(A)", apply_unipotent), ("n_dual(A)", apply_dual_unipotent)]:
    print(name, symplectic_form(g(A, w1), g(A, w2)) == symplectic_form(w1, w2),
          quartic_form(g(A, w1)) == quartic_form(w1))

# %% Levi and GL2 elements are similitudes with factor nu
for g in [Levi(1, QQ(3)), Levi(2, QQ("1/2")), GL2Torus(QQ(2), QQ(5)), GL2Unipotent(QQ(7)),
          GL2Weyl()]:
    s_ok = symplectic_form(g.apply(w1), g.apply(w2)) == g.nu * symplectic_form(w1, w2)
    q_ok = quartic_form(g.apply(w1)) == g.nu ** 2 * quartic_form(w1)
    print(f"{g!r:45.45s} nu={g.nu!s:>4}  forms scale: {s_ok and q_ok}")

# %% The three cocharacters multiply to a GL2 torus element
t = QQ(2)
lhs = Levi(1, t).apply(Levi(2, t).apply(Levi(3, t).apply(w1)))
print("m1 m2 m3 (t) == diag(t^4, t^2):", lhs == GL2Torus(t ** 4, t ** 2).apply(w1))
