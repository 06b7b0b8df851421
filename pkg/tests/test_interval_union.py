import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import brute_unions
from symdiff_codes.errors import EmptySetError, ParityError, RangeError
from symdiff_codes.interval_union import (
    Interval,
    IntervalUnion,
    canonicalize,
    count_unions,
    enumerate_unions,
    from_boundary_set,
    from_mask,
    min_parts,
    to_boundary_set,
)


def parts(u):
    return [[p.lo, p.hi] for p in u.parts]


@pytest.mark.parametrize(
    "intervals, n, expected",
    [
        ([[1, 2], [4, 5]], 5, [[1, 2], [4, 5]]),
        ([[1, 2], [3, 4]], 4, [[1, 4]]),
        ([[2, 3], [1, 1]], 3, [[1, 3]]),
        ([[1, 5], [2, 3]], 5, [[1, 5]]),
    ],
)
def test_canonicalize_examples(intervals, n, expected):
    assert parts(canonicalize(intervals, n)) == expected


def test_canonicalize_errors():
    with pytest.raises(EmptySetError):
        canonicalize([], 3)
    with pytest.raises(RangeError):
        canonicalize([[0, 2]], 3)
    with pytest.raises(RangeError):
        canonicalize([[2, 4]], 3)


def test_union_rejects_adjacent_parts():
    with pytest.raises(ValueError):
        IntervalUnion((Interval(1, 2), Interval(3, 4)), 4)


def test_enumerate_small():
    assert [str(u) for u in enumerate_unions(2, 1)] == ["1-1", "1-2", "2-2"]
    assert len(enumerate_unions(3, 1)) == 6 == comb(4, 2)
    assert {frozenset(u.elements()) for u in enumerate_unions(3, 2)} == {
        frozenset(s) for s in [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]
    }


def test_enumerate_order_is_parts_then_lex():
    us = enumerate_unions(7, 3)
    keys = [(u.num_parts, u.endpoints()) for u in us]
    assert keys == sorted(keys)
    assert len(set(us)) == len(us)


@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize("k", range(1, 5))
def test_enumerate_matches_brute_force(n, k):
    got = [frozenset(u.elements()) for u in enumerate_unions(n, k)]
    assert sorted(map(sorted, got)) == sorted(map(sorted, brute_unions(n, k)))


@pytest.mark.parametrize("n, k, expected", [(3, 1, 6), (4, 2, 15), (5, 1, 15)])
def test_count_examples(n, k, expected):
    assert count_unions(n, k) == expected


def test_count_matches_enumeration():
    # the full n <= 20 range runs in the acceptance suite
    for n in range(1, 15):
        for k in range(1, 5):
            assert len(enumerate_unions(n, k)) == count_unions(n, k)


def test_pascal_equality():
    for n in range(1, 31):
        for k in range(1, 6):
            if 2 * k <= n:
                assert sum(comb(n + 1, 2 * j) for j in range(1, k + 1)) == sum(
                    comb(n, i) for i in range(1, 2 * k + 1)
                )


def test_boundary_examples():
    assert to_boundary_set(canonicalize([[1, 2], [4, 5]], 5)) == (0, 2, 3, 5)
    assert to_boundary_set(canonicalize([[1, 1]], 3)) == (0, 1)
    with pytest.raises(ParityError):
        from_boundary_set((0, 1, 2), 3)


def test_boundary_round_trip_random():
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randint(1, 30)
        mask = rng.randint(1, (1 << n) - 1)
        u = from_mask(mask, n)
        b = to_boundary_set(u)
        assert len(b) == 2 * u.num_parts
        assert from_boundary_set(b, n) == u


def test_boundary_round_trip_enumerated():
    for u in enumerate_unions(9, 4):
        assert from_boundary_set(to_boundary_set(u), 9) == u


@given(
    st.integers(1, 25).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.tuples(st.integers(1, n), st.integers(1, n)).map(sorted), min_size=1, max_size=8
            ),
        )
    )
)
def test_canonical_minimality(case):
    n, ivs = case
    u = canonicalize(ivs, n)
    assert u.num_parts <= len(ivs)
    covered = set()
    for lo, hi in ivs:
        covered.update(range(lo, hi + 1))
    assert set(u.elements()) == covered
    assert u.num_parts == min_parts(u.mask)


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, (1 << n) - 1))))
def test_text_round_trip(case):
    n, mask = case
    u = from_mask(mask, n)
    assert u.mask == mask
    assert IntervalUnion.parse(str(u), n) == u
