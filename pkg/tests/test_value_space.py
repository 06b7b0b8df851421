import itertools
import json
import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import all_points, power_points, row_major
from symdiff_codes.errors import ArgumentError, SizeError
from symdiff_codes.interval_union import canonicalize, enumerate_unions, from_mask
from symdiff_codes.value_space import (
    PointSet,
    ValueSpaceIndex,
    count_surjections,
    embed,
    expected_size,
    inclusion_vector,
    member_power,
    member_vej,
    point_at,
    point_index,
    pullback,
    representative_point,
    valueset_of,
)


def test_valueset_of():
    assert valueset_of((1, 1)) == (1,)
    assert valueset_of((2, 1, 2)) == (1, 2)
    assert valueset_of((3, 1, 2)) == (1, 2, 3)


def test_representative_point():
    assert representative_point((1, 2), 2) == (1, 2)
    assert representative_point((2,), 3) == (2, 2, 2)
    assert representative_point((1, 3), 4) == (1, 3, 3, 3)
    with pytest.raises(SizeError):
        representative_point((1, 2, 3), 2)


def test_representative_has_its_value_set():
    for t in ValueSpaceIndex(6, 4).columns:
        assert valueset_of(representative_point(t, 4)) == t


def test_index_order_and_size():
    idx = ValueSpaceIndex(4, 3)
    assert idx.size == expected_size(4, 3) == 4 + 6 + 4
    keys = [(len(t), t) for t in idx.columns]
    assert keys == sorted(keys)
    for c in range(idx.size):
        assert idx.column_of(idx.valueset(c)) == c
    with pytest.raises(ArgumentError):
        idx.column_of((1, 2, 3, 4))


def test_point_index_row_major():
    for n, d in [(3, 2), (2, 4), (4, 3)]:
        for i, x in enumerate(all_points(n, d)):
            assert point_index(x, n) == i == row_major(x, n)
            assert point_at(i, n, d) == x


def test_inclusion_vector_examples():
    idx = ValueSpaceIndex(2, 2)
    assert inclusion_vector(canonicalize([[1, 2]], 2), idx).bits() == [1, 1, 1]
    assert inclusion_vector(canonicalize([[1, 1]], 2), idx).bits() == [1, 0, 0]


def test_inclusion_vector_popcount():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 12)
        d = rng.randint(1, 5)
        s = from_mask(rng.randint(1, (1 << n) - 1), n)
        v = inclusion_vector(s, ValueSpaceIndex(n, d))
        assert v.popcount() == sum(comb(len(s), i) for i in range(1, min(d, len(s)) + 1))


def test_member_examples():
    assert member_power((1, 2), canonicalize([[1, 2]], 2)) == 1
    assert member_vej((1, 3), {1}, {1, 2}) == 0
    assert member_vej((2, 2), {1}, {1, 2}) == 0
    assert member_vej((1, 2), {1}, {1, 2}) == 1
    assert member_vej((2, 2), None, {1, 2}) == 1


def test_inclusion_vector_matches_membership():
    for n, d in [(3, 2), (4, 3), (3, 4)]:
        idx = ValueSpaceIndex(n, d)
        for s in enumerate_unions(n, 2):
            v = inclusion_vector(s, idx)
            for x in all_points(n, d):
                assert member_power(x, s) == v[idx.column_of(valueset_of(x))]


def test_power_pointset_matches_oracle():
    for s in enumerate_unions(4, 2):
        ps = PointSet.power(s, 3)
        assert set(ps.points()) == power_points(s.elements(), 3)


def test_indicator_injectivity():
    for n in range(1, 5):
        for d in range(1, 4):
            seen = {}
            for mask in range(1, 1 << n):
                s = from_mask(mask, n)
                bits = PointSet.power(s, d).bits
                assert bits not in seen
                seen[bits] = mask


def test_surjection_counts():
    for n in range(1, 5):
        for d in range(1, 5):
            counts = {}
            for x in all_points(n, d):
                t = valueset_of(x)
                counts[t] = counts.get(t, 0) + 1
            for t, c in counts.items():
                assert c == count_surjections(d, len(t))
            assert len(counts) == expected_size(n, d)


def test_embed_examples():
    assert embed((4, 7), 3) == (4, 4, 7)
    assert embed((1, 2, 3), 3) == (1, 2, 3)
    with pytest.raises(ArgumentError):
        embed((1, 2, 3), 2)


def test_pullback_inverts_embedding():
    rng = random.Random(2)
    for _ in range(30):
        n, d, big = rng.randint(1, 4), 2, 3
        a = PointSet(n, d, rng.getrandbits(n**d))
        image = PointSet.from_points((embed(x, big) for x in a.points()), n, big)
        noise = PointSet(n, big, rng.getrandbits(n**big))
        image_mask = PointSet.from_points((embed(x, big) for x in all_points(n, d)), n, big)
        # pulling back only looks at the image of the embedding
        assert pullback(image | (noise - image_mask), d) == a


def test_pullback_of_power_difference():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 4)
        big = rng.randint(3, 4 if n <= 3 else 3)
        d = rng.randint(2, big)
        s = from_mask(rng.randint(1, (1 << n) - 1), n)
        a2 = PointSet(n, big, rng.getrandbits(n**big))
        b2 = a2 ^ PointSet.power(s, big)
        assert pullback(a2, d) ^ pullback(b2, d) == PointSet.power(s, d)


def test_pointset_json_round_trip():
    a = PointSet.from_points([(1, 2), (3, 3)], 3, 2)
    obj = json.loads(json.dumps(a.to_json()))
    assert obj == {"n": 3, "d": 2, "points": [[1, 2], [3, 3]]}
    assert PointSet.from_json(obj) == a


@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_xor_is_symmetric_difference(n, d, data):
    pts = all_points(n, d)
    a = set(data.draw(st.lists(st.sampled_from(pts))))
    b = set(data.draw(st.lists(st.sampled_from(pts))))
    pa = PointSet.from_points(a, n, d)
    pb = PointSet.from_points(b, n, d)
    assert set((pa ^ pb).points()) == a ^ b
    assert len(pa) == len(a)
