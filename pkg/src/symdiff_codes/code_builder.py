"""Half-density families of subsets of [n]^d, realised as parity codes.

The family is {A : |A n W| even} for a witness set W with |S^d n W| odd for
every S in I_k. Membership is then a nonzero linear functional, so it
splits P([n]^d) in half and flips whenever A changes by some S^d.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numba
import numpy as np

from . import gf2
from .algebra_checks import build_inclusion_matrix
from .errors import ArgumentError, EmptyFamily, TooLarge
from .gf2 import Gf2Matrix, Gf2Vector
from .interval_union import enumerate_unions
from .value_space import (
    Point,
    PointSet,
    ValueSet,
    embed,
    iter_points,
    mask_of,
    point_index,
    representative_point,
    value_space_index,
)


def solve_parity_weights(n: int, d: int, k: int | None = None) -> dict[ValueSet, int]:
    """Weights w_T with sum_{T subset of S} w_T odd for every S in I_k.

    For k = d/2 and n >= d the system is square and invertible, so w is
    unique. For n < d every nonempty subset of [n] is in I_{d/2} and is a
    value set, so the system is the invertible subset-lattice zeta matrix.
    """
    if d < 2 or d % 2:
        raise ArgumentError("d must be even and >= 2")
    if n < 1:
        raise ArgumentError(f"need n >= 1, got n={n}")
    k = d // 2 if k is None else k
    if not 1 <= k <= d // 2:
        raise ArgumentError(f"k must lie in [1, {d // 2}]")
    a = build_inclusion_matrix(n, d, k)
    w = gf2.solve(a, Gf2Vector.ones(a.rows))
    idx = value_space_index(n, d)
    bits = w.bits()
    return {t: bits[i] for i, t in enumerate(idx.columns)}


@dataclass(frozen=True)
class ParityCode:
    n: int
    d: int
    k: int
    witness: tuple[Point, ...]

    def __post_init__(self) -> None:
        if not self.witness:
            raise ArgumentError("witness set must be nonempty")

    @cached_property
    def witness_set(self) -> PointSet:
        return PointSet.from_points(self.witness, self.n, self.d)

    def membership(self, a: PointSet) -> int:
        """Parity of |A n W|; the family is the set of A with parity 0."""
        if (a.n, a.d) != (self.n, self.d):
            raise ArgumentError("point set dimensions do not match the code")
        return (a.bits & self.witness_set.bits).bit_count() & 1

    def contains(self, a: PointSet) -> bool:
        return self.membership(a) == 0

    def odd_violations(self) -> list[str]:
        """Unions S in I_k for which |S^d n W| is even (should be empty)."""
        wmasks = [mask_of(x) for x in self.witness]
        bad = []
        for s in enumerate_unions(self.n, self.k):
            m = s.mask
            if sum(1 for wm in wmasks if wm & ~m == 0) % 2 == 0:
                bad.append(str(s))
        return bad

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "witness_points": [list(x) for x in self.witness],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> "ParityCode":
        n, d, k = int(obj["n"]), int(obj["d"]), int(obj["k"])
        pts = [tuple(int(c) for c in p) for p in obj["witness_points"]]
        PointSet.from_points(pts, n, d)  # range check
        return cls(n, d, k, tuple(sorted(set(pts), key=lambda x: point_index(x, n))))


def build_code(n: int, d: int, k: int | None = None) -> ParityCode:
    if d < 2:
        raise ArgumentError("d must be >= 2")
    if n < 2:
        raise ArgumentError(f"need n >= 2, got n={n}")
    k = d // 2 if k is None else k
    if not 1 <= k <= d // 2:
        raise ArgumentError(f"k must lie in [1, {d // 2}]")
    if d % 2 == 0:
        weights = solve_parity_weights(n, d, k)
        pts = [representative_point(t, d) for t, b in weights.items() if b]
    else:
        base = build_code(n, 2 * k, k)
        pts = [embed(x, d) for x in base.witness]
    return ParityCode(n, d, k, tuple(sorted(pts, key=lambda x: point_index(x, n))))


def membership(a: PointSet, code: ParityCode) -> int:
    return code.membership(a)


# -- exhaustive and sampled verification --------------------------------------


@numba.njit(cache=True)
def _parity64(x):
    x ^= x >> np.uint64(32)
    x ^= x >> np.uint64(16)
    x ^= x >> np.uint64(8)
    x ^= x >> np.uint64(4)
    x ^= x >> np.uint64(2)
    x ^= x >> np.uint64(1)
    return x & np.uint64(1)


@numba.njit(cache=True)
def _sweep(universe_bits, wmask, gens):
    """For every subset A, check parity(A n W) != parity((A ^ g) n W) for all g.

    Returns (member count, first failing subset or -1, failing generator index).
    """
    members = 0
    total = np.uint64(1) << np.uint64(universe_bits)
    a = np.uint64(0)
    while a < total:
        m = _parity64(a & wmask)
        if m == 0:
            members += 1
        for gi in range(gens.shape[0]):
            if _parity64((a ^ gens[gi]) & wmask) == m:
                return members, np.int64(a), gi
        a += np.uint64(1)
    return members, np.int64(-1), -1


@dataclass
class FlipReport:
    n: int
    d: int
    k: int
    mode: str
    checked_subsets: int
    generators: int
    members: int
    ok: bool
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__)


def exhaustive_flip_check(code: ParityCode, max_points: int = 30) -> FlipReport:
    """Visit every subset A of [n]^d and every S in I_k; A and A ^ S^d must
    have different membership. Also counts the family."""
    universe = code.n**code.d
    if universe > max_points:
        raise TooLarge(f"2^{universe} subsets exceeds the exhaustive guard 2^{max_points}")
    unions = enumerate_unions(code.n, code.k)
    gens = np.array([PointSet.power(s, code.d).bits for s in unions], dtype=np.uint64)
    members, bad, gi = _sweep(universe, np.uint64(code.witness_set.bits), gens)
    cex = None
    if bad >= 0:
        a = PointSet(code.n, code.d, int(bad))
        cex = {"A": [list(x) for x in a.points()], "S": str(unions[gi])}
    return FlipReport(
        code.n, code.d, code.k, "exhaustive", 1 << universe, len(unions),
        int(members), bad < 0, cex,
    )


def _random_subsets(rng: np.random.Generator, count: int, universe: int) -> np.ndarray:
    words = gf2.n_words(universe)
    out = rng.integers(0, 1 << 64, size=(count, words), dtype=np.uint64, endpoint=False)
    if universe % 64:
        out[:, -1] &= np.uint64((1 << (universe % 64)) - 1)
    return out


def _as_words(bits: int, universe: int) -> np.ndarray:
    return Gf2Vector.from_int(bits, universe).words


def sampled_flip_check(code: ParityCode, samples: int, seed: int = 0, chunk: int = 2048) -> tuple[FlipReport, float]:
    """Random (A, S) pairs: A uniform over P([n]^d), S uniform over I_k.

    Returns the report and the fraction of sampled A inside the family.
    """
    if samples < 1:
        raise ArgumentError("samples must be positive")
    rng = np.random.default_rng(seed)
    universe = code.n**code.d
    unions = enumerate_unions(code.n, code.k)
    gens = np.stack([_as_words(PointSet.power(s, code.d).bits, universe) for s in unions])
    w = _as_words(code.witness_set.bits, universe)
    members = 0
    done = 0
    cex = None
    while done < samples:
        m = min(chunk, samples - done)
        a = _random_subsets(rng, m, universe)
        sidx = rng.integers(0, len(unions), size=m)
        before = gf2._fold_parity(a & w)
        after = gf2._fold_parity((a ^ gens[sidx]) & w)
        members += int((before == 0).sum())
        same = np.flatnonzero(before == after)
        if same.size and cex is None:
            i = int(same[0])
            bits = sum(int(x) << (64 * j) for j, x in enumerate(a[i]))
            cex = {"A": [list(x) for x in PointSet(code.n, code.d, bits).points()], "S": str(unions[sidx[i]])}
        done += m
    report = FlipReport(code.n, code.d, code.k, "sampled", samples, len(unions), members, cex is None, cex)
    return report, members / samples


# -- graph codes ---------------------------------------------------------------


@dataclass(frozen=True)
class GraphParityCode:
    """Graphs on [n] with an even number of witness edges form the family."""

    n: int
    witness_edges: tuple[tuple[int, int], ...]

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(itertools.combinations(range(1, self.n + 1), 2))}

    def edge_mask(self, edges: Iterable[Sequence[int]]) -> int:
        idx = self.edge_index()
        m = 0
        for u, v in edges:
            u, v = min(u, v), max(u, v)
            if (u, v) not in idx:
                raise ArgumentError(f"({u},{v}) is not an edge of K_{self.n}")
            m |= 1 << idx[(u, v)]
        return m

    @cached_property
    def witness_mask(self) -> int:
        return self.edge_mask(self.witness_edges)

    def membership(self, edges: Iterable[Sequence[int]] | int) -> int:
        m = edges if isinstance(edges, int) else self.edge_mask(edges)
        return (m & self.witness_mask).bit_count() & 1

    def clique_mask(self, lo: int, hi: int) -> int:
        return self.edge_mask(itertools.combinations(range(lo, hi + 1), 2))

    def odd_violations(self) -> list[str]:
        return [
            f"{a}-{b}"
            for a, b in _interval_cliques(self.n)
            if (self.clique_mask(a, b) & self.witness_mask).bit_count() % 2 == 0
        ]

    def to_json(self) -> dict:
        return {"n": self.n, "witness_edges": [list(e) for e in self.witness_edges]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> "GraphParityCode":
        n = int(obj["n"])
        edges = sorted({(min(u, v), max(u, v)) for u, v in obj["witness_edges"]})
        code = cls(n, tuple(edges))
        code.edge_mask(edges)  # range check
        return code


def _interval_cliques(n: int) -> list[tuple[int, int]]:
    """Intervals [a,b] with a < b, ordered by length then start."""
    return [(a, a + span) for span in range(1, n) for a in range(1, n - span + 1)]


def build_graph_code(n: int) -> GraphParityCode:
    """Edge weights with an odd number of witness edges in every interval clique."""
    if n < 2:
        raise ArgumentError("need n >= 2")
    edges = list(itertools.combinations(range(1, n + 1), 2))
    dense = np.zeros((len(edges), len(edges)), dtype=np.uint8)
    for r, (a, b) in enumerate(_interval_cliques(n)):
        for c, (u, v) in enumerate(edges):
            if a <= u and v <= b:
                dense[r, c] = 1
    w = gf2.solve(Gf2Matrix.from_dense(dense), Gf2Vector.ones(len(edges)))
    return GraphParityCode(n, tuple(edges[i] for i in w.support()))


# -- averaging step -------------------------------------------------------------


@dataclass
class SliceResult:
    outside: PointSet  # U, a subset of [n]^d \ [N]^d
    subfamily: list[PointSet]  # over [N]^d
    density_before: Fraction
    density_after: Fraction

    def to_json(self) -> dict:
        return {
            "U": self.outside.to_json(),
            "subfamily": {
                "n": self.subfamily[0].n,
                "d": self.outside.d,
                "family": [[list(x) for x in a.points()] for a in self.subfamily],
            },
            "density_before": str(self.density_before),
            "density_after": str(self.density_after),
        }


def restrict_to_best_slice(family: Sequence[PointSet], big_n: int) -> SliceResult:
    """Fix the part outside [N]^d to its most popular value U.

    The chosen slice has density in P([N]^d) at least the density of the
    family in P([n]^d), since the 2^(n^d - N^d) slices average to it.
    """
    if not family:
        raise EmptyFamily("family is empty")
    n, d = family[0].n, family[0].d
    if not 1 <= big_n <= n:
        raise ArgumentError(f"need 1 <= N <= n, got N={big_n}")
    if any((a.n, a.d) != (n, d) for a in family):
        raise ArgumentError("family members live in different spaces")
    members = sorted({a.bits for a in family})
    inner_index = [point_index(x, n) for x in iter_points(big_n, d)]
    inner_mask = sum(1 << i for i in inner_index)

    groups: dict[int, list[int]] = {}
    for bits in members:
        groups.setdefault(bits & ~inner_mask, []).append(bits)
    # ties go to the numerically smallest U for determinism
    u_bits = min(groups, key=lambda u: (-len(groups[u]), u))
    sub = []
    for bits in groups[u_bits]:
        small = 0
        for j, i in enumerate(inner_index):
            if bits >> i & 1:
                small |= 1 << j
        sub.append(PointSet(big_n, d, small))
    before = Fraction(len(members), 2 ** (n**d))
    after = Fraction(len(sub), 2 ** (big_n**d))
    return SliceResult(PointSet(n, d, u_bits), sub, before, after)
