"""
Split octonions and the Albert algebra
======================================

Exact rational arithmetic in the 27-dimensional Jordan algebra, and a look at
its rank-one elements.
"""

# %%
import random

from f4transfer import (AlbertElement, Octonion, adjoint, cross, cubic_norm, rank,
                        rank1_construct, trace_pairing)
from f4transfer.fields import QQ

rng = random.Random(0)
x, y = Octonion.random(rng), Octonion.random(rng)
print("N(x) N(y) =", x.norm() * y.norm())
print("N(xy)     =", (x * y).norm())

# %% The adjoint squares back to the norm times the element
X = AlbertElement.random(rng)
print("N(X) =", cubic_norm(X))
print("(X#)# == N(X) X:", adjoint(adjoint(X)) == X.scale(cubic_norm(X)))
print("(X, X#) == 3 N(X):", trace_pairing(X, adjoint(X)) == 3 * cubic_norm(X))
print("X x X == X#:", cross(X, X) == adjoint(X))

# %% Rank is read off from X, X# and N(X)
for name, E in [("0", AlbertElement.zero()), ("diag(1,0,0)", AlbertElement.diag(1, 0, 0)),
                ("diag(1,1,0)", AlbertElement.diag(1, 1, 0)), ("I", AlbertElement.identity())]:
    print(f"rank {name:12s} = {rank(E)}")

# %% A rank-one element of trace one from its first row
a = QQ("2/5")
R = rank1_construct(a, Octonion.random(rng), Octonion.random(rng), normalize=True)
print("rank", rank(R), "trace", R.trace())
print("N(y) + N(z) =", R.y.norm() + R.z.norm(), " a(1-a) =", R.a * (1 - R.a))
