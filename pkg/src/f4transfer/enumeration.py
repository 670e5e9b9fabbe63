"""Exhaustive rank stratification of the Albert algebra over GF(2).

Each element of J(GF(2)) is packed into a 27-bit word

    index = a<<26 | b<<25 | c<<24 | x<<16 | y<<8 | z

where an octonion byte stores its flat coordinates ``(a, b, u1, u2, u3, v1,
v2, v3)`` from the most significant bit down.  Integer order of the index is
therefore lexicographic order over the 27 coordinates.

The iteration space is split into 2**11 chunks, one per ``(a, b, c, x)``;
inside a chunk all 2**16 pairs ``(y, z)`` are handled at once with table
lookups.  Only the integral adjoint / cubic norm formulas are used, so
characteristic 2 is fine.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

import numpy as np

from .fields import Field, PrimeField, UnsupportedOperation

N_CHUNKS = 1 << 11


def _bits(n: int) -> np.ndarray:
    idx = np.arange(n, dtype=np.int64)
    return ((idx[:, None] >> (7 - np.arange(8))) & 1).astype(np.int64)


def _pack(coords: np.ndarray) -> np.ndarray:
    return (coords.astype(np.int64) << (7 - np.arange(8))).sum(axis=-1)


@lru_cache(maxsize=1)
def octonion_tables():
    """Multiplication, conjugation, norm and trace tables for O(GF(2)).

    Returns ``(mul, conj, norm, trace)`` with ``mul`` of shape (256, 256).
    """
    c = _bits(256)
    x = c[:, None, :]
    y = c[None, :, :]
    xa, xb, xu, xv = x[..., 0], x[..., 1], x[..., 2:5], x[..., 5:8]
    ya, yb, yu, yv = y[..., 0], y[..., 1], y[..., 2:5], y[..., 5:8]
    a = xa * ya + (xu * yv).sum(-1)
    b = xb * yb + (xv * yu).sum(-1)
    u = xa[..., None] * yu + yb[..., None] * xu - np.cross(xv, yv)
    v = ya[..., None] * xv + xb[..., None] * yv + np.cross(xu, yu)
    prod = np.concatenate([a[..., None], b[..., None], u, v], axis=-1) % 2
    mul = _pack(prod).astype(np.uint8)
    # char 2: conj swaps a and b, signs vanish
    conj = _pack(c[:, [1, 0, 2, 3, 4, 5, 6, 7]]).astype(np.uint8)
    norm = ((c[:, 0] * c[:, 1] + (c[:, 2:5] * c[:, 5:8]).sum(-1)) % 2).astype(np.uint8)
    trace = ((c[:, 0] + c[:, 1]) % 2).astype(np.uint8)
    return mul, conj, norm, trace


def pack_index(a: int, b: int, c: int, x: int, y: int, z: int) -> int:
    return (a << 26) | (b << 25) | (c << 24) | (x << 16) | (y << 8) | z


def unpack_index(index: int) -> tuple:
    return ((index >> 26) & 1, (index >> 25) & 1, (index >> 24) & 1,
            (index >> 16) & 0xFF, (index >> 8) & 0xFF, index & 0xFF)


def count_chunk(chunk: int) -> Counter:
    """Counts keyed by ``(rank, trace)`` over the 2**16 elements of one chunk.

    ``chunk`` is the top 11 bits of the packed index, i.e. ``(a, b, c, x)``.
    """
    mul, conj, norm, trace = octonion_tables()
    a, b, c = (chunk >> 10) & 1, (chunk >> 9) & 1, (chunk >> 8) & 1
    x = chunk & 0xFF
    yz = np.arange(1 << 16)
    y, z = yz >> 8, yz & 0xFF
    zeros = np.uint8(0)
    ax = np.uint8(x if a else 0)
    # adjoint entries (signs drop in characteristic 2)
    d_a = (b * c + int(norm[x])) & 1
    d_b = (c * a + norm[y]) & 1
    d_c = (a * b + norm[z]) & 1
    d_x = conj[mul[y, z]] ^ ax
    d_y = conj[mul[z, x]] ^ np.where(b, y, 0).astype(np.uint8)
    d_z = conj[mul[x, y]] ^ np.where(c, z, 0).astype(np.uint8)
    adj_zero = ((d_a == 0) & (d_b == 0) & (d_c == 0)
                & (d_x == zeros) & (d_y == zeros) & (d_z == zeros))
    n_j = (a * b * c + a * int(norm[x]) + b * norm[y] + c * norm[z]
           + trace[mul[mul[x, y], z]]) & 1
    is_zero = (a | b | c | x) == 0
    elem_zero = is_zero & (yz == 0)
    ranks = np.where(elem_zero, 0, np.where(adj_zero, 1, np.where(n_j == 0, 2, 3)))
    tr = (a + b + c) & 1
    out = Counter()
    for r in range(4):
        k = int(np.count_nonzero(ranks == r))
        if k:
            out[(r, tr)] += k
    return out


def rank_census(chunks=None, workers: int | None = None) -> Counter:
    """Sum of :func:`count_chunk` over ``chunks`` (default: all 2**11)."""
    chunks = range(N_CHUNKS) if chunks is None else chunks
    total = Counter()
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(count_chunk, chunks, chunksize=64):
                total.update(part)
    else:
        for ch in chunks:
            total.update(count_chunk(ch))
    return total


def count_rank1(field: Field, trace_constraint=None, workers: int | None = None) -> int:
    """Number of rank-one elements of J(GF(2)), optionally of a given trace."""
    if not (isinstance(field, PrimeField) and field.p == 2):
        raise UnsupportedOperation(
            f"full enumeration is only feasible over GF(2), not {field!r}; "
            "use qsymbolic.group_orders_volumes for the order-ratio formula")
    census = rank_census(workers=workers)
    if trace_constraint is None:
        return census[(1, 0)] + census[(1, 1)]
    return census[(1, int(field(trace_constraint)))]
