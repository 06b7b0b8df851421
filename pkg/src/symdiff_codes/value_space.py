"""Points of [n]^d, their value sets, and subsets of [n]^d.

Membership of a point in S^d depends only on the set of values taken by
its coordinates, so most work happens in the space of value sets
T with 1 <= |T| <= d rather than over all n^d points.

Points are plain tuples of ints (1-based). A value set is a sorted tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ArgumentError, RangeError, SizeError
from .gf2 import Gf2Vector
from .interval_union import IntervalUnion

Point = tuple[int, ...]
ValueSet = tuple[int, ...]


def check_point(x: Sequence[int], n: int, d: int) -> Point:
    x = tuple(int(c) for c in x)
    if len(x) != d:
        raise ArgumentError(f"point {x} does not have {d} coordinates")
    if any(c < 1 or c > n for c in x):
        raise RangeError(f"point {x} not inside [{n}]^{d}")
    return x


def point_index(x: Sequence[int], n: int) -> int:
    """Row-major index, first coordinate most significant."""
    idx = 0
    for c in x:
        idx = idx * n + (c - 1)
    return idx


def point_at(index: int, n: int, d: int) -> Point:
    coords = []
    for _ in range(d):
        index, r = divmod(index, n)
        coords.append(r + 1)
    return tuple(reversed(coords))


def iter_points(n: int, d: int) -> Iterator[Point]:
    """All of [n]^d in row-major order."""
    return itertools.product(range(1, n + 1), repeat=d)


def valueset_of(x: Sequence[int]) -> ValueSet:
    return tuple(sorted(set(x)))


def mask_of(values: Iterable[int]) -> int:
    m = 0
    for v in values:
        m |= 1 << (v - 1)
    return m


def representative_point(t: Sequence[int], d: int) -> Point:
    """Elements of T ascending, padded with copies of max(T) up to length d."""
    t = tuple(sorted(set(t)))
    if not t:
        raise ArgumentError("value set must be nonempty")
    if len(t) > d:
        raise SizeError(f"value set of size {len(t)} does not fit in dimension {d}")
    return t + (t[-1],) * (d - len(t))


def member_power(x: Sequence[int], s: IntervalUnion) -> int:
    """1 iff x lies in S^d."""
    return int(all(c in s for c in x))


def member_vej(x: Sequence[int], e: Iterable[int] | None, j: Iterable[int]) -> int:
    """1 iff every value of E appears in x and every coordinate of x is in J."""
    vals = set(x)
    e = set(e or ())
    j = set(j)
    if not e <= j:
        raise ArgumentError("E must be a subset of J")
    return int(e <= vals and vals <= j)


def count_surjections(d: int, m: int) -> int:
    """Number of maps from a d-set onto an m-set (inclusion-exclusion)."""
    return sum((-1) ** i * comb(m, i) * (m - i) ** d for i in range(m + 1))


@dataclass(frozen=True)
class ValueSpaceIndex:
    """Numbering of all value sets T with 1 <= |T| <= d, by size then lex."""

    n: int
    d: int
    columns: tuple[ValueSet, ...] = field(init=False, repr=False)
    _col_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 1:
            raise ArgumentError("need n >= 1 and d >= 1")
        cols = tuple(
            t
            for m in range(1, min(self.d, self.n) + 1)
            for t in itertools.combinations(range(1, self.n + 1), m)
        )
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "_col_of", {t: i for i, t in enumerate(cols)})

    @property
    def size(self) -> int:
        return len(self.columns)

    def __len__(self) -> int:
        return len(self.columns)

    def column_of(self, t: Sequence[int]) -> int:
        key = tuple(sorted(set(t)))
        try:
            return self._col_of[key]
        except KeyError:
            raise ArgumentError(f"{key} is not a value set for n={self.n}, d={self.d}") from None

    def valueset(self, col: int) -> ValueSet:
        return self.columns[col]

    def masks(self) -> list[int]:
        return [mask_of(t) for t in self.columns]

    def mask_array(self) -> np.ndarray:
        """Value-set bitmasks as uint64 (requires n <= 64)."""
        if self.n > 64:
            raise ArgumentError("mask_array needs n <= 64")
        return np.array(self.masks(), dtype=np.uint64)


@lru_cache(maxsize=64)
def value_space_index(n: int, d: int) -> ValueSpaceIndex:
    return ValueSpaceIndex(n, d)


def expected_size(n: int, d: int) -> int:
    return sum(comb(n, i) for i in range(1, d + 1))


def inclusion_vector(s: IntervalUnion, idx: ValueSpaceIndex) -> Gf2Vector:
    """Coefficients of 1_{S^d} in the basis {1_V(T)}: bit T is [T subset of S]."""
    if s.n != idx.n:
        raise ArgumentError("union and index disagree on n")
    elems = s.elements()
    support = [
        idx.column_of(t)
        for m in range(1, min(idx.d, len(elems)) + 1)
        for t in itertools.combinations(elems, m)
    ]
    return Gf2Vector.from_support(support, idx.size)


@dataclass(frozen=True)
class PointSet:
    """A subset of [n]^d as an integer bitset over row-major point indices."""

    n: int
    d: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> (self.n**self.d):
            raise ArgumentError("bitset does not fit in [n]^d")

    @property
    def universe(self) -> int:
        return self.n**self.d

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], n: int, d: int) -> "PointSet":
        bits = 0
        for x in points:
            bits |= 1 << point_index(check_point(x, n, d), n)
        return cls(n, d, bits)

    @classmethod
    def power(cls, s: IntervalUnion | Iterable[int], d: int, n: int | None = None) -> "PointSet":
        """S^d as a point set."""
        if isinstance(s, IntervalUnion):
            n = s.n
            elems = s.elements()
        else:
            elems = tuple(s)
            if n is None:
                raise ArgumentError("n is required when S is a plain iterable")
        bits = 0
        for x in itertools.product(elems, repeat=d):
            bits |= 1 << point_index(x, n)
        return cls(n, d, bits)

    @classmethod
    def full(cls, n: int, d: int) -> "PointSet":
        return cls(n, d, (1 << n**d) - 1)

    def _check(self, other: "PointSet") -> None:
        if (self.n, self.d) != (other.n, other.d):
            raise ArgumentError("point sets live in different spaces")

    def __xor__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.n, self.d, self.bits ^ other.bits)

    def __and__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.n, self.d, self.bits & other.bits)

    def __or__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.n, self.d, self.bits | other.bits)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.n, self.d, self.bits & ~other.bits)

    def __le__(self, other: "PointSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: object) -> bool:
        return bool(self.bits >> point_index(x, self.n) & 1)  # type: ignore[arg-type]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points())

    def points(self) -> list[Point]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(point_at(low.bit_length() - 1, self.n, self.d))
            b ^= low
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "points": [list(x) for x in self.points()]}

    @classmethod
    def from_json(cls, obj: dict) -> "PointSet":
        return cls.from_points(obj["points"], int(obj["n"]), int(obj["d"]))


def embed(x: Sequence[int], big_d: int) -> Point:
    """Repeat the first coordinate so that the point has big_d coordinates."""
    x = tuple(x)
    d = len(x)
    if d > big_d:
        raise ArgumentError(f"cannot embed dimension {d} into {big_d}")
    return (x[0],) * (big_d - d + 1) + x[1:]


def embed_set(a: PointSet, big_d: int) -> PointSet:
    return PointSet.from_points((embed(x, big_d) for x in a.points()), a.n, big_d)


def pullback(big: PointSet, d: int) -> PointSet:
    """Points x of [n]^d whose embedding lies in the given subset of [n]^D."""
    if d > big.d:
        raise ArgumentError(f"cannot pull back from dimension {big.d} to {d}")
    n = big.n
    bits = 0
    for i, x in enumerate(iter_points(n, d)):
        if big.bits >> point_index(embed(x, big.d), n) & 1:
            bits |= 1 << i
    return PointSet(n, d, bits)


def valueset_points(t: Sequence[int], n: int, d: int) -> PointSet:
    """V(T): points whose value set is exactly T."""
    t = tuple(sorted(set(t)))
    return PointSet.from_points(
        (x for x in itertools.product(t, repeat=d) if len(set(x)) == len(t)), n, d
    )
