"""Negative certificates: odd closed walks in the symmetric-difference graph.

The graph G on P([n]^d) joins A and B when A ^ B = S^d for some S in I_k.
An odd closed walk shows G is not bipartite, so no parity code exists.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ArgumentError, TooLarge
from .interval_union import IntervalUnion, enumerate_unions, from_mask
from .value_space import PointSet

SYMMETRIC = "symmetric"
CONTAINMENT = "containment"


@dataclass
class Walk:
    vertices: list[PointSet]
    steps: list[IntervalUnion]
    mode: str = SYMMETRIC
    closed: bool = False

    @property
    def length(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "length": self.length,
            "closed": self.closed,
            "steps": [str(s) for s in self.steps],
            "vertices": [[list(x) for x in v.points()] for v in self.vertices],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict, n: int, d: int) -> "Walk":
        steps = [IntervalUnion.parse(s, n) for s in obj["steps"]]
        verts = [PointSet.from_points(v, n, d) for v in obj["vertices"]]
        closed = bool(obj.get("closed", len(verts) > 1 and verts[0] == verts[-1]))
        return cls(verts, steps, obj.get("mode", SYMMETRIC), closed)


def odd_closed_walk(n: int, d: int, k: int) -> Walk:
    """Closed walk of length 2^(d+1) - 1 from the empty set.

    Step i toggles S^d where S is the subset of [d+1] with binary code i
    (bit j set iff j+1 in S). Every point's value set T has |T| <= d, so it
    is covered by an even number 2^(d+1-|T|) of the steps and the walk closes.
    """
    if d < 1:
        raise ArgumentError("d must be >= 1")
    if k < d // 2 + 1:
        raise ArgumentError(f"odd walks need k >= {d // 2 + 1}, got k={k}")
    if n < d + 1:
        raise ArgumentError(f"odd walks need n >= d + 1, got n={n}")
    v = PointSet(n, d)
    verts = [v]
    steps = []
    for code in range(1, 1 << (d + 1)):
        s = from_mask(code, n)
        if s.num_parts > k:
            raise AssertionError(f"{s} needs more than {k} intervals")
        steps.append(s)
        v = v ^ PointSet.power(s, d)
        verts.append(v)
    if verts[-1] != verts[0]:
        raise AssertionError("walk did not close")
    return Walk(verts, steps, SYMMETRIC, closed=True)


def verify_walk(w: Walk, n: int, d: int, k: int) -> bool:
    if len(w.steps) != len(w.vertices) - 1 or not w.vertices:
        return False
    if w.mode not in (SYMMETRIC, CONTAINMENT):
        return False
    if any((v.n, v.d) != (n, d) for v in w.vertices):
        return False
    for s in w.steps:
        if s.n != n or s.num_parts > k:
            return False
    for a, b, s in zip(w.vertices, w.vertices[1:], w.steps):
        power = PointSet.power(s, d)
        if w.mode == SYMMETRIC:
            if a ^ b != power:
                return False
        elif not ((a <= b and b - a == power) or (b <= a and a - b == power)):
            return False
    if w.closed and w.vertices[0] != w.vertices[-1]:
        return False
    return True


@dataclass
class BipartiteResult:
    n: int
    d: int
    k: int
    vertices: int
    bipartite: bool
    odd_cycle: Walk | None = None
    # per-vertex BFS side and component id; only filled in when bipartite
    color: np.ndarray | None = field(default=None, repr=False)
    component: np.ndarray | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "vertices": self.vertices,
            "bipartite": self.bipartite,
            "odd_cycle": self.odd_cycle.to_json() if self.odd_cycle else None,
        }
        if self.component is not None:
            out["components"] = int(self.component.max()) + 1
        return out


MAX_POINTS = 20


def bfs_bipartite(n: int, d: int, k: int, max_points: int = MAX_POINTS) -> BipartiteResult:
    """2-colour the explicit graph on all subsets of [n]^d by BFS.

    Stops at the first edge joining two vertices of equal colour and
    returns the odd cycle through their lowest common BFS ancestor.
    """
    universe = n**d
    if universe > max_points:
        raise TooLarge(f"graph on 2^{universe} vertices exceeds the guard 2^{max_points}")
    unions = enumerate_unions(n, k)
    gens = [PointSet.power(s, d).bits for s in unions]
    size = 1 << universe
    color = np.full(size, -1, dtype=np.int8)
    comp = np.full(size, -1, dtype=np.int64)
    parent = np.full(size, -1, dtype=np.int64)
    via = np.full(size, -1, dtype=np.int32)
    depth = np.zeros(size, dtype=np.int64)

    n_comp = 0
    for root in range(size):
        if color[root] >= 0:
            continue
        color[root] = 0
        comp[root] = n_comp
        queue = deque([root])
        while queue:
            u = queue.popleft()
            cu = color[u]
            for gi, g in enumerate(gens):
                v = u ^ g
                if color[v] < 0:
                    color[v] = 1 - cu
                    comp[v] = n_comp
                    parent[v] = u
                    via[v] = gi
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif color[v] == cu:
                    cycle = _extract_cycle(u, v, gi, parent, via, depth, unions, n, d)
                    return BipartiteResult(n, d, k, size, False, cycle)
        n_comp += 1
    return BipartiteResult(n, d, k, size, True, None, color, comp)


def _extract_cycle(u, v, gi, parent, via, depth, unions, n, d) -> Walk:
    path_u, path_v = [u], [v]
    steps_u, steps_v = [], []
    a, b = u, v
    while depth[a] > depth[b]:
        steps_u.append(int(via[a]))
        a = int(parent[a])
        path_u.append(a)
    while depth[b] > depth[a]:
        steps_v.append(int(via[b]))
        b = int(parent[b])
        path_v.append(b)
    while a != b:
        steps_u.append(int(via[a]))
        a = int(parent[a])
        path_u.append(a)
        steps_v.append(int(via[b]))
        b = int(parent[b])
        path_v.append(b)
    # lca -> ... -> u -> v -> ... -> lca
    verts = list(reversed(path_u)) + path_v
    step_ids = list(reversed(steps_u)) + [gi] + steps_v
    return Walk(
        [PointSet(n, d, int(x)) for x in verts],
        [unions[i] for i in step_ids],
        SYMMETRIC,
        closed=True,
    )


def is_simple_cycle(w: Walk) -> bool:
    inner = [v.bits for v in w.vertices[:-1]]
    return w.closed and len(set(inner)) == len(inner)


def _matrix_set(rows: Sequence[Sequence[int]]) -> PointSet:
    n = len(rows)
    return PointSet.from_points(
        [(i + 1, j + 1) for i in range(n) for j in range(n) if rows[i][j]], n, 2
    )


def seven_cycle_fixture() -> Walk:
    """The containment cycle through seven 3x3 matrices for I1, I2, I3 = {1}, {2}, {3}."""
    mats = [
        [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
        [[1, 1, 0], [1, 1, 0], [0, 0, 0]],
        [[1, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[1, 1, 0], [1, 1, 1], [0, 1, 1]],
        [[0, 1, 0], [1, 1, 1], [0, 1, 1]],
        [[0, 1, 0], [1, 1, 1], [0, 1, 0]],
        [[1, 1, 1], [1, 1, 1], [1, 1, 1]],
    ]
    verts = [_matrix_set(m) for m in mats]
    verts.append(verts[0])
    steps = [
        IntervalUnion.parse(s, 3) for s in ("1-2", "2", "2-3", "1", "3", "1,3", "1-3")
    ]
    return Walk(verts, steps, CONTAINMENT, closed=True)
