"""Unions of intervals inside [n]: normal form, enumeration, counting.

A union is stored in canonical form: its parts are sorted, disjoint and
pairwise non-adjacent, so the number of parts is the least number of
intervals whose union it is.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import ArgumentError, EmptySetError, ParityError, RangeError


@dataclass(frozen=True, order=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ArgumentError(f"interval [{self.lo},{self.hi}] has lo > hi")

    def __len__(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class IntervalUnion:
    """A nonempty union of intervals of [n] in canonical form.

    Build instances with :func:`canonicalize`, :func:`from_mask` or
    :meth:`parse`; the constructor only validates.
    """

    parts: tuple[Interval, ...]
    n: int

    def __post_init__(self) -> None:
        if not self.parts:
            raise EmptySetError("an interval union must be nonempty")
        for p in self.parts:
            if p.lo < 1 or p.hi > self.n:
                raise RangeError(f"interval [{p.lo},{p.hi}] not inside [1,{self.n}]")
        for p, q in zip(self.parts, self.parts[1:]):
            if p.hi + 1 >= q.lo:
                raise ArgumentError(f"parts {p} and {q} are not disjoint and non-adjacent")

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    @property
    def mask(self) -> int:
        """Bitmask of the elements; element i is bit i-1."""
        m = 0
        for p in self.parts:
            m |= ((1 << (p.hi - p.lo + 1)) - 1) << (p.lo - 1)
        return m

    def elements(self) -> tuple[int, ...]:
        return tuple(i for p in self.parts for i in range(p.lo, p.hi + 1))

    def __len__(self) -> int:
        return sum(len(p) for p in self.parts)

    def __contains__(self, i: object) -> bool:
        return any(p.lo <= i <= p.hi for p in self.parts)  # type: ignore[operator]

    def endpoints(self) -> tuple[int, ...]:
        return tuple(e for p in self.parts for e in (p.lo, p.hi))

    def __str__(self) -> str:
        return ",".join(f"{p.lo}-{p.hi}" for p in self.parts)

    @classmethod
    def parse(cls, text: str, n: int) -> "IntervalUnion":
        """Inverse of ``str``: ``"1-2,4-5"``. A bare ``"3"`` means ``3-3``."""
        pieces = [t.strip() for t in text.split(",") if t.strip()]
        if not pieces:
            raise EmptySetError("empty interval union text")
        intervals = []
        for piece in pieces:
            lo, sep, hi = piece.partition("-")
            try:
                intervals.append(Interval(int(lo), int(hi) if sep else int(lo)))
            except ValueError as exc:
                raise ArgumentError(f"cannot parse interval {piece!r}") from exc
        return canonicalize(intervals, n)


def _as_interval(iv: Interval | Sequence[int]) -> Interval:
    if isinstance(iv, Interval):
        return iv
    lo, hi = iv
    return Interval(int(lo), int(hi))


def canonicalize(intervals: Iterable[Interval | Sequence[int]], n: int) -> IntervalUnion:
    """Sort and fuse overlapping or adjacent intervals."""
    ivs = sorted(_as_interval(iv) for iv in intervals)
    if not ivs:
        raise EmptySetError("no intervals given")
    for iv in ivs:
        if iv.lo < 1 or iv.hi > n:
            raise RangeError(f"interval [{iv.lo},{iv.hi}] not inside [1,{n}]")
    merged = [ivs[0]]
    for iv in ivs[1:]:
        last = merged[-1]
        if iv.lo <= last.hi + 1:
            merged[-1] = Interval(last.lo, max(last.hi, iv.hi))
        else:
            merged.append(iv)
    return IntervalUnion(tuple(merged), n)


def from_mask(mask: int, n: int) -> IntervalUnion:
    """Canonical union whose element set is given by a bitmask over [n]."""
    if mask <= 0:
        raise EmptySetError("empty set is not an interval union")
    if mask >> n:
        raise RangeError(f"mask has elements beyond {n}")
    parts = []
    i = 1
    while mask:
        if mask & 1:
            lo = i
            while mask & 1:
                mask >>= 1
                i += 1
            parts.append(Interval(lo, i - 1))
        else:
            low = (mask & -mask).bit_length() - 1
            mask >>= low
            i += low
    return IntervalUnion(tuple(parts), n)


def to_boundary_set(s: IntervalUnion) -> tuple[int, ...]:
    """[a1,b1] u ... u [aj,bj]  ->  (a1-1, b1, ..., aj-1, bj), a 2j-subset of {0..n}."""
    return tuple(e for p in s.parts for e in (p.lo - 1, p.hi))


def from_boundary_set(b: Sequence[int], n: int) -> IntervalUnion:
    elems = tuple(b)
    if len(elems) % 2:
        raise ParityError(f"boundary set has odd size {len(elems)}")
    if not elems:
        raise EmptySetError("empty boundary set")
    if any(x >= y for x, y in zip(elems, elems[1:])):
        raise ArgumentError("boundary set must be strictly increasing")
    if elems[0] < 0 or elems[-1] > n:
        raise RangeError(f"boundary set not inside {{0,...,{n}}}")
    parts = tuple(Interval(elems[i] + 1, elems[i + 1]) for i in range(0, len(elems), 2))
    return IntervalUnion(parts, n)


def _trusted_union(bounds: Sequence[int], n: int) -> IntervalUnion:
    # skips validation; bounds must be a strictly increasing boundary set
    parts = []
    for i in range(0, len(bounds), 2):
        iv = object.__new__(Interval)
        object.__setattr__(iv, "lo", bounds[i] + 1)
        object.__setattr__(iv, "hi", bounds[i + 1])
        parts.append(iv)
    u = object.__new__(IntervalUnion)
    object.__setattr__(u, "parts", tuple(parts))
    object.__setattr__(u, "n", n)
    return u


def iter_unions(n: int, k: int) -> Iterator[IntervalUnion]:
    """Yield I_k by part count, then lexicographically on endpoints."""
    if n < 1 or k < 1:
        raise ArgumentError("need n >= 1 and k >= 1")
    for j in range(1, k + 1):
        if 2 * j > n + 1:
            break
        # lex order on boundary sets equals lex order on flattened endpoints
        for b in itertools.combinations(range(n + 1), 2 * j):
            yield _trusted_union(b, n)


def enumerate_unions(n: int, k: int) -> list[IntervalUnion]:
    return list(iter_unions(n, k))


def count_unions(n: int, k: int) -> int:
    """|I_k| via the boundary-set bijection, cross-checked against Pascal's rule."""
    if n < 1 or k < 1:
        raise ArgumentError("need n >= 1 and k >= 1")
    by_boundary = sum(comb(n + 1, 2 * j) for j in range(1, k + 1))
    by_pascal = sum(comb(n, i) for i in range(1, 2 * k + 1))
    assert by_boundary == by_pascal, (n, k, by_boundary, by_pascal)
    return by_boundary


def min_parts(mask: int) -> int:
    """Number of maximal runs of set bits, i.e. the least number of intervals."""
    return bin(mask & ~(mask << 1)).count("1")
