import json

import pytest

from symdiff_codes.errors import ArgumentError, TooLarge
from symdiff_codes.interval_union import IntervalUnion
from symdiff_codes.value_space import PointSet
from symdiff_codes.witness_walks import (
    CONTAINMENT,
    Walk,
    bfs_bipartite,
    is_simple_cycle,
    odd_closed_walk,
    seven_cycle_fixture,
    verify_walk,
)


@pytest.mark.parametrize("n, d, k, length", [(3, 2, 2, 7), (2, 1, 1, 3), (4, 3, 2, 15), (5, 4, 3, 31)])
def test_odd_closed_walk(n, d, k, length):
    w = odd_closed_walk(n, d, k)
    assert w.length == length
    assert w.vertices[0] == w.vertices[-1] == PointSet(n, d)
    assert verify_walk(w, n, d, k)


def test_walk_steps_in_binary_order():
    w = odd_closed_walk(3, 2, 2)
    assert [str(s) for s in w.steps] == ["1-1", "2-2", "1-2", "3-3", "1-1,3-3", "2-3", "1-3"]


def test_walk_replay_by_hand():
    w = odd_closed_walk(4, 3, 2)
    cur = set()
    for s, v in zip(w.steps, w.vertices[1:]):
        elems = s.elements()
        cur ^= {(a, b, c) for a in elems for b in elems for c in elems}
        assert set(v.points()) == cur
    assert cur == set()


def test_odd_walk_preconditions():
    with pytest.raises(ArgumentError):
        odd_closed_walk(3, 2, 1)
    with pytest.raises(ArgumentError):
        odd_closed_walk(2, 2, 2)


def test_corrupted_walk_rejected():
    w = odd_closed_walk(3, 2, 2)
    for i in range(1, len(w.vertices) - 1):
        bad = list(w.vertices)
        bad[i] = bad[i] ^ PointSet.from_points([(1, 3)], 3, 2)
        assert not verify_walk(Walk(bad, w.steps, w.mode, True), 3, 2, 2)


def test_walk_rejects_steps_outside_family():
    w = odd_closed_walk(3, 2, 2)
    assert not verify_walk(w, 3, 2, 1)  # "1-1,3-3" needs two intervals


def test_walk_rejects_open_claimed_closed():
    w = odd_closed_walk(3, 2, 2)
    open_walk = Walk(w.vertices[:-1], w.steps[:-1], w.mode, True)
    assert not verify_walk(open_walk, 3, 2, 2)
    assert verify_walk(Walk(w.vertices[:-1], w.steps[:-1], w.mode, False), 3, 2, 2)


def test_seven_matrix_containment_cycle():
    w = seven_cycle_fixture()
    assert w.mode == CONTAINMENT and w.length == 7
    assert verify_walk(w, 3, 2, 2)
    assert is_simple_cycle(w)
    # not a valid walk if one containment step is reversed into a non-power
    broken = list(w.vertices)
    broken[3] = broken[3] ^ PointSet.from_points([(3, 3)], 3, 2)
    assert not verify_walk(Walk(broken, w.steps, CONTAINMENT, True), 3, 2, 2)


@pytest.mark.parametrize("n, d, k, verts", [(3, 2, 1, 512), (2, 2, 1, 16), (2, 3, 1, 256), (4, 2, 1, 1 << 16)])
def test_bfs_bipartite_when_k_is_half_d(n, d, k, verts):
    res = bfs_bipartite(n, d, k)
    assert res.bipartite and res.odd_cycle is None
    assert res.vertices == verts


def test_bfs_components_n3_d2():
    res = bfs_bipartite(3, 2, 1)
    # generators are independent, so components are cosets of a rank-6 span
    assert int(res.component.max()) + 1 == 2 ** (9 - 6)


@pytest.mark.parametrize("n, d, k", [(3, 2, 2), (3, 1, 1), (2, 1, 1), (4, 2, 2)])
def test_bfs_finds_odd_cycle(n, d, k):
    res = bfs_bipartite(n, d, k)
    assert not res.bipartite
    cyc = res.odd_cycle
    assert cyc.length % 2 == 1
    assert verify_walk(cyc, n, d, k)
    assert is_simple_cycle(cyc)


def test_bfs_cycle_short_for_n3_d2_k2():
    res = bfs_bipartite(3, 2, 2)
    assert res.odd_cycle.length <= 7


def test_bfs_guard():
    with pytest.raises(TooLarge):
        bfs_bipartite(5, 2, 1)


def test_walk_json_round_trip():
    w = odd_closed_walk(3, 2, 2)
    obj = json.loads(w.dumps())
    assert obj["mode"] == "symmetric" and obj["length"] == 7
    assert obj["steps"][4] == "1-1,3-3"
    assert obj["vertices"][0] == []
    back = Walk.from_json(obj, 3, 2)
    assert verify_walk(back, 3, 2, 2)
    assert back.steps == w.steps
    assert IntervalUnion.parse("1-1,3-3", 3).num_parts == 2
