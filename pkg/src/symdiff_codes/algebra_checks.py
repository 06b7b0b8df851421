"""Inclusion matrices of interval unions against value sets, and exact
checks of the rank, spanning and signed-sum identities behind the
construction.

Every function 1_{S^d} is constant on each value-set class V(T), so all
identities here are evaluated over value sets (M of them) instead of the
n^d points.
"""

from __future__ import annotations

import itertools
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import gf2
from .errors import ArgumentError, Inconsistent
from .gf2 import Gf2Matrix, Gf2Vector
from .interval_union import IntervalUnion, count_unions, enumerate_unions, min_parts
from .value_space import (
    PointSet,
    ValueSet,
    iter_points,
    mask_of,
    value_space_index,
    valueset_points,
)

_CHUNK_CELLS = 1 << 24


def build_inclusion_matrix(n: int, d: int, k: int) -> Gf2Matrix:
    """Rows: I_k in enumeration order. Columns: value sets. Entry [T subset of S]."""
    if n < 1 or d < 1 or k < 1:
        raise ArgumentError("need n, d, k >= 1")
    unions = enumerate_unions(n, k)
    idx = value_space_index(n, d)
    member = np.zeros((len(unions), n), dtype=bool)
    for r, s in enumerate(unions):
        for p in s.parts:
            member[r, p.lo - 1 : p.hi] = True

    by_size: list[np.ndarray] = []
    for m in range(1, min(d, n) + 1):
        by_size.append(np.array(list(itertools.combinations(range(n), m)), dtype=np.intp))
    cols = idx.size
    out = np.zeros((len(unions), gf2.n_words(cols)), dtype=np.uint64)
    step = max(1, _CHUNK_CELLS // max(1, cols * min(d, n)))
    for start in range(0, len(unions), step):
        block = member[start : start + step]
        dense = np.concatenate([block[:, els].all(axis=2) for els in by_size], axis=1)
        out[start : start + step] = gf2._pack(dense)
    return Gf2Matrix(len(unions), cols, out)


@dataclass
class IndependenceReport:
    n: int
    d: int
    k: int
    rows: int
    cols: int
    rank: int
    independent: bool
    square: bool
    elapsed_ms: float

    def to_json(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            del out["elapsed_ms"]
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing))


def verify_independence(n: int, d: int, k: int) -> IndependenceReport:
    t0 = time.perf_counter()
    m = build_inclusion_matrix(n, d, k)
    r = gf2.rank(m)
    elapsed = (time.perf_counter() - t0) * 1000.0
    assert m.rows == count_unions(n, k)
    report = IndependenceReport(
        n=n, d=d, k=k, rows=m.rows, cols=m.cols, rank=r,
        independent=(r == m.rows), square=(m.rows == m.cols), elapsed_ms=round(elapsed, 3),
    )
    if n >= d == 2 * k and not (report.independent and report.square):
        raise AssertionError(f"independence fails at n={n}, d={d}, k={k}: {report}")
    return report


# -- signed identities -------------------------------------------------------


def _check_endpoints(n: int, d: int, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(v) for v in a)
    if d % 2 or d < 2:
        raise ArgumentError("d must be a positive even integer")
    if len(a) != d:
        raise ArgumentError(f"need exactly {d} endpoints, got {len(a)}")
    if any(x >= y for x, y in zip(a, a[1:])):
        raise ArgumentError("endpoints must be strictly increasing")
    if a[0] < 1 or a[-1] > n:
        raise ArgumentError(f"endpoints must lie in [1,{n}]")
    return a


def _interval_mask(lo: int, hi: int) -> int:
    if lo > hi:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << (lo - 1)


def omega_terms(a: Sequence[int], positions: Sequence[int]) -> Iterator[tuple[int, int]]:
    """Yield (sign, mask of S_w) for every w in {0,1}^L.

    S_w = [a1+w1, a2-w2] u ... u [a_{d-1}+w_{d-1}, a_d-w_d]; intervals that
    become empty are dropped, so the mask may be 0 when all of them vanish.
    """
    d = len(a)
    positions = sorted(set(positions))
    for bits in itertools.product((0, 1), repeat=len(positions)):
        w = [0] * d
        for pos, b in zip(positions, bits):
            w[pos - 1] = b
        smask = 0
        for t in range(0, d, 2):
            smask |= _interval_mask(a[t] + w[t], a[t + 1] - w[t + 1])
        yield (-1) ** sum(bits), smask


def omega_lhs(n: int, d: int, a: Sequence[int], positions: Sequence[int], flip: int | None = None) -> np.ndarray:
    """Signed sum of [T subset of S_w] for every value set T, as an int array.

    ``flip`` negates the sign of the term with that index (for mutation tests).
    """
    tm = value_space_index(n, d).mask_array()
    total = np.zeros(len(tm), dtype=np.int64)
    for i, (sign, smask) in enumerate(omega_terms(a, positions)):
        if flip == i:
            sign = -sign
        total += sign * ((tm & ~np.uint64(smask)) == 0)
    return total


def vej_indicator(n: int, d: int, e_mask: int, j_mask: int) -> np.ndarray:
    """[E subset of T subset of J] for every value set T."""
    tm = value_space_index(n, d).mask_array()
    return (((tm & np.uint64(e_mask)) == e_mask) & ((tm & ~np.uint64(j_mask)) == 0)).astype(np.int64)


def check_omega_identity(n: int, d: int, a: Sequence[int], positions: Sequence[int]) -> bool:
    """Check the signed sum over w in {0,1}^L of 1_{S_w^d} equals 1_{V(E,J)}.

    Here J = [a1,a2] u ... u [a_{d-1},a_d] and E = {a_l : l in L}. Exact,
    over the integers, at every value set.
    """
    a = _check_endpoints(n, d, a)
    if any(p < 1 or p > d for p in positions):
        raise ArgumentError(f"positions must lie in [1,{d}]")
    j_mask = 0
    for t in range(0, d, 2):
        j_mask |= _interval_mask(a[t], a[t + 1])
    e_mask = mask_of(a[p - 1] for p in set(positions))
    return bool(np.array_equal(omega_lhs(n, d, a, positions), vej_indicator(n, d, e_mask, j_mask)))


def random_omega_instance(rng: np.random.Generator, max_n: int = 20, ds: Sequence[int] = (2, 4, 6)):
    d = int(rng.choice(ds))
    n = int(rng.integers(d, max_n + 1))
    a = tuple(int(v) for v in np.sort(rng.choice(np.arange(1, n + 1), size=d, replace=False)))
    positions = tuple(int(p) for p in range(1, d + 1) if rng.random() < 0.5)
    return n, d, a, positions


def check_inclusion_exclusion_zero(d: int, n: int) -> bool:
    """Check sum over nonempty S of [d+1] of (-1)^|S| 1_{S^d} vanishes on [n]^d,
    and that each such S needs at most ceil((d+1)/2) intervals."""
    if d < 1 or n < d + 1:
        raise ArgumentError("need d >= 1 and n >= d + 1")
    bound = (d + 2) // 2
    tm = value_space_index(n, d).mask_array()
    total = np.zeros(len(tm), dtype=np.int64)
    for smask in range(1, 1 << (d + 1)):
        if min_parts(smask) > bound:
            return False
        total += (-1) ** smask.bit_count() * ((tm & ~np.uint64(smask)) == 0)
    return not total.any()


# -- spanning ----------------------------------------------------------------


@lru_cache(maxsize=16)
def _square_system(n: int, d: int) -> tuple[tuple[IntervalUnion, ...], Gf2Matrix]:
    k = d // 2
    a = build_inclusion_matrix(n, d, k)
    return tuple(enumerate_unions(n, k)), a.transpose()


def _xor_of_powers(unions: Sequence[IntervalUnion], d: int, n: int) -> PointSet:
    acc = PointSet(n, d)
    for s in unions:
        acc = acc ^ PointSet.power(s, d)
    return acc


def expand_valueset(t: Sequence[int], n: int, d: int) -> list[IntervalUnion]:
    """Unions S in I_{d/2} whose powers S^d XOR to exactly V(T)."""
    if d % 2 or d < 2 or n < d:
        raise ArgumentError("need even d >= 2 and n >= d")
    t = tuple(sorted(set(t)))
    if not 1 <= len(t) <= d or t[0] < 1 or t[-1] > n:
        raise ArgumentError(f"{t} is not a value set for n={n}, d={d}")
    unions, at = _square_system(n, d)
    idx = value_space_index(n, d)
    target = Gf2Vector.from_support([idx.column_of(t)], idx.size)
    try:
        coeffs = gf2.solve(at, target)
    except Inconsistent as exc:  # pragma: no cover - excluded by the rank result
        raise AssertionError(f"V({t}) not spanned for n={n}, d={d}") from exc
    chosen = [unions[i] for i in coeffs.support()]
    if not _spans_exactly(chosen, t, n, d):
        raise AssertionError(f"expansion of V({t}) failed pointwise verification")
    return chosen


def _spans_exactly(chosen: Sequence[IntervalUnion], t: ValueSet, n: int, d: int) -> bool:
    if n**d <= 1 << 20:
        return _xor_of_powers(chosen, d, n) == valueset_points(t, n, d)
    # too many points to materialise: compare on value sets
    tm = value_space_index(n, d).mask_array()
    acc = np.zeros(len(tm), dtype=bool)
    for s in chosen:
        acc ^= (tm & ~np.uint64(s.mask)) == 0
    return bool(np.array_equal(acc, tm == np.uint64(mask_of(t))))


def inductive_expansion(t: Sequence[int], n: int, d: int) -> Counter:
    """Integer coefficients c_S with sum c_S 1_{S^d} = 1_{V(T)}, keyed by S mask.

    Downward induction on |T|: extend T to a d-set T', apply the signed
    w-identity with L = positions of T inside T', then subtract the classes
    V(T'') for T strictly inside T'' inside J. Independent of the linear
    solve in :func:`expand_valueset`.
    """
    if d % 2 or n < d:
        raise ArgumentError("need even d and n >= d")
    cache: dict[int, Counter] = {}
    return _induct(mask_of(t), n, d, cache)


def _induct(tmask: int, n: int, d: int, cache: dict) -> Counter:
    if tmask in cache:
        return cache[tmask]
    t = [i + 1 for i in range(n) if tmask >> i & 1]
    extra = [v for v in range(1, n + 1) if not tmask >> (v - 1) & 1][: d - len(t)]
    a = sorted(t + extra)
    positions = [i + 1 for i, v in enumerate(a) if tmask >> (v - 1) & 1]
    coefs: Counter = Counter()
    for sign, smask in omega_terms(a, positions):
        if smask:
            assert min_parts(smask) <= d // 2
            coefs[smask] += sign
    j_mask = 0
    for i in range(0, d, 2):
        j_mask |= _interval_mask(a[i], a[i + 1])
    free = [v for v in range(1, n + 1) if (j_mask >> (v - 1) & 1) and not tmask >> (v - 1) & 1]
    for size in range(1, d - len(t) + 1):
        for add in itertools.combinations(free, size):
            for s, c in _induct(tmask | mask_of(add), n, d, cache).items():
                coefs[s] -= c
    coefs = Counter({s: c for s, c in coefs.items() if c})
    cache[tmask] = coefs
    return coefs


def evaluate_integer_combination(coefs: dict[int, int], n: int, d: int) -> np.ndarray:
    """Evaluate sum c_S [T subset of S] at every value set T."""
    tm = value_space_index(n, d).mask_array()
    total = np.zeros(len(tm), dtype=np.int64)
    for smask, c in coefs.items():
        total += c * ((tm & ~np.uint64(smask)) == 0)
    return total


def vtt_decomposition_holds(t: Sequence[int], t_outer: Sequence[int], n: int, d: int) -> bool:
    """Pointwise check of 1_{V(T,T')} = sum over T <= T'' <= T' of 1_{V(T'')}."""
    t, t_outer = set(t), set(t_outer)
    lhs = PointSet.from_points(
        (x for x in iter_points(n, d) if t <= set(x) <= t_outer), n, d
    )
    rhs = PointSet(n, d)
    rest = sorted(t_outer - t)
    for size in range(len(rest) + 1):
        for add in itertools.combinations(rest, size):
            t2 = t | set(add)
            if 1 <= len(t2) <= d:
                rhs = rhs ^ valueset_points(t2, n, d)
    return lhs == rhs
