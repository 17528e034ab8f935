import io
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import walk_return_probability
from treeentropy.walkcounts import (
    CountCache,
    ReturnCountTable,
    build_counts,
    convolve_counts,
    default_terms,
    p1_return,
    p_return,
)


@pytest.mark.parametrize("k, expected", [(0, Fraction(1)), (1, Fraction(1, 2)), (2, Fraction(3, 8))])
def test_p1_return(k, expected):
    assert p1_return(k) == expected


def test_p1_return_rejects_negative():
    with pytest.raises(ValueError):
        p1_return(-1)


@pytest.mark.parametrize(
    "d, kmax, counts",
    [(1, 1, [1, 2]), (2, 2, [1, 4, 36]), (3, 2, [1, 6, 90])],
)
def test_build_counts_examples(d, kmax, counts):
    table = build_counts(d, kmax)
    assert table.dimension == d
    assert list(table.counts) == counts


@pytest.mark.parametrize("d, kmax", [(0, 3), (2, 0), (-1, 1)])
def test_build_counts_rejects(d, kmax):
    with pytest.raises(ValueError):
        build_counts(d, kmax)


@pytest.mark.parametrize(
    "d, k, expected",
    [(3, 1, Fraction(1, 6)), (2, 2, Fraction(9, 64)), (3, 2, Fraction(5, 72)), (5, 0, Fraction(1))],
)
def test_p_return_examples(d, k, expected):
    assert p_return(d, k, build_counts(d, 4)) == expected


def test_p_return_range_and_dimension_errors():
    table = build_counts(3, 4)
    with pytest.raises(IndexError):
        p_return(3, 5, table)
    with pytest.raises(ValueError):
        p_return(2, 1, table)


def test_p2_is_p1_squared():
    table = build_counts(2, 30)
    for k in range(31):
        assert p_return(2, k, table) == p1_return(k) ** 2


@pytest.mark.parametrize("d, k", [(d, k) for d in (1, 2, 3) for k in (1, 2, 3)])
def test_matches_walk_enumeration(d, k):
    assert p_return(d, k, build_counts(d, 3)) == walk_return_probability(d, k)


@pytest.mark.parametrize("d", range(3, 7))
def test_split_independence(d):
    balanced = build_counts(d, 20, cache=CountCache())
    peeled = build_counts(d, 20, split=lambda n: 1)
    assert balanced.counts == peeled.counts


def test_convolution_is_symmetric():
    a = build_counts(2, 15).counts
    b = build_counts(3, 15).counts
    assert convolve_counts(a, b, 15) == convolve_counts(b, a, 15)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 7, 12])
def test_table_invariants(d):
    table = build_counts(d, 60)
    assert table[0] == 1
    for k in range(1, 61):
        assert 0 < table[k] <= (2 * d) ** (2 * k)
        assert table[k] % 2 == 0


@settings(max_examples=25, deadline=None)
@given(d=st.integers(1, 12), kmax=st.integers(2, 60))
def test_probabilities_decrease(d, kmax):
    table = build_counts(d, kmax)
    probs = [p_return(d, k, table) for k in range(1, kmax + 1)]
    assert all(0 < p <= 1 for p in probs)
    assert all(a > b for a, b in zip(probs, probs[1:]))


def test_cache_slices_longer_tables():
    cache = CountCache()
    long = build_counts(5, 40, cache)
    short = build_counts(5, 10, cache)
    assert short.counts == long.counts[:11]
    assert build_counts(5, 10, CountCache()).counts == short.counts


def test_dump_and_load_round_trip():
    table = build_counts(4, 25)
    buf = io.StringIO()
    table.dump(buf)
    lines = buf.getvalue().splitlines()
    assert lines[2] == f"2\t{table[2]}"
    assert ReturnCountTable.load(4, lines) == table


def test_load_rejects_gaps():
    with pytest.raises(ValueError):
        ReturnCountTable.load(3, ["0\t1", "2\t90"])


def test_truncated():
    table = build_counts(3, 10)
    assert table.truncated(4).counts == table.counts[:5]
    with pytest.raises(IndexError):
        table.truncated(11)


@pytest.mark.parametrize("d, K", [(1, 1000), (3, 1000), (6, 1000), (7, 100), (10, 100), (11, 80), (20, 80)])
def test_default_terms(d, K):
    assert default_terms(d) == K
