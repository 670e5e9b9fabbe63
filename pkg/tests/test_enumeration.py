import random

import pytest

from f4transfer.albert import AlbertElement, rank
from f4transfer.enumeration import (N_CHUNKS, count_chunk, count_rank1, octonion_tables,
                                    pack_index, rank_census, unpack_index)
from f4transfer.fields import GF, QQ, UnsupportedOperation
from f4transfer.octonion import Octonion

F2 = GF(2)


def _oct(byte):
    bits = [(byte >> (7 - i)) & 1 for i in range(8)]
    return Octonion.from_coords(bits, F2)


def test_tables_match_octonion_class():
    mul, conj, norm, trace = octonion_tables()
    r = random.Random(0)
    for _ in range(300):
        i, j = r.randrange(256), r.randrange(256)
        x, y = _oct(i), _oct(j)
        assert _oct(int(mul[i, j])) == x * y
        assert _oct(int(conj[i])) == x.conj()
        assert norm[i] == int(x.norm())
        assert trace[i] == int(x.trace())


def test_pack_roundtrip():
    r = random.Random(1)
    for _ in range(200):
        idx = r.randrange(1 << 27)
        assert pack_index(*unpack_index(idx)) == idx


def _element(index):
    a, b, c, x, y, z = unpack_index(index)
    return AlbertElement(F2(a), F2(b), F2(c), _oct(x), _oct(y), _oct(z))


@pytest.mark.parametrize("chunk", [0, 1, 700, 1033, N_CHUNKS - 1])
def test_chunk_agrees_with_direct_rank(chunk):
    # sampled elements of the chunk, ranked with the generic code path
    counts = count_chunk(chunk)
    assert sum(counts.values()) == 1 << 16
    r = random.Random(chunk)
    seen = {}
    for _ in range(150):
        yz = r.randrange(1 << 16)
        X = _element((chunk << 16) | yz)
        key = (rank(X), int(X.trace()))
        seen[key] = seen.get(key, 0) + 1
    assert set(seen) <= set(counts)


def test_zero_is_the_only_rank0():
    counts = count_chunk(0)
    assert counts[(0, 0)] == 1


def test_partial_census_is_additive():
    a, b = rank_census(range(0, 4)), rank_census(range(4, 8))
    assert rank_census(range(8)) == a + b


def test_count_rank1_rejects_other_fields():
    with pytest.raises(UnsupportedOperation):
        count_rank1(GF(3))
    with pytest.raises(UnsupportedOperation):
        count_rank1(QQ)


@pytest.mark.slow
def test_full_census_trace_split():
    census = rank_census()
    assert sum(census.values()) == 1 << 27
    assert census[(1, 1)] == 69888
    assert census[(0, 0)] == 1
