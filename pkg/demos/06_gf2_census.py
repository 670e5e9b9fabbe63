"""
Rank census of J over GF(2)
===========================

All 2^27 elements, chunked by their first 11 bits.
"""

# %%
import time

from f4transfer.enumeration import rank_census
from f4transfer.qsymbolic import group_orders_volumes

t0 = time.perf_counter()
census = rank_census()
print(f"{time.perf_counter() - t0:.1f}s")
for (r, tr), n in sorted(census.items()):
    print(f"rank {r} trace {tr}: {n}")

# %% The trace-one rank-one count is |F4(2)| / |Spin9(2)|
v = group_orders_volumes(2)
print(census[(1, 1)], v.ratio, v.vol_x)
