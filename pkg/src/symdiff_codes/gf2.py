"""Bit-packed dense linear algebra over GF(2).

Rows are stored as little-endian ``uint64`` words: column ``c`` lives in
word ``c // 64`` at bit ``c % 64``. Pad bits beyond ``cols`` are always
zero. Elimination runs in numba-compiled loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numba
import numpy as np

from .errors import ArgumentError, Inconsistent

WORD = 64


def n_words(length: int) -> int:
    return (length + WORD - 1) // WORD


def _pack(dense: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into uint64 words along the last axis."""
    dense = np.asarray(dense, dtype=np.uint8)
    rows, cols = dense.shape
    w = n_words(cols)
    padded = np.zeros((rows, w * WORD), dtype=np.uint8)
    padded[:, :cols] = dense & 1
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").astype(np.uint64)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    bits = np.unpackbits(words.view(np.uint8), axis=-1, bitorder="little")
    return bits[..., :cols]


@dataclass(eq=False)
class Gf2Vector:
    length: int
    words: np.ndarray

    @classmethod
    def zeros(cls, length: int) -> "Gf2Vector":
        return cls(length, np.zeros(n_words(length), dtype=np.uint64))

    @classmethod
    def ones(cls, length: int) -> "Gf2Vector":
        return cls.from_int((1 << length) - 1, length)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Gf2Vector":
        arr = np.asarray(list(bits), dtype=np.uint8)
        return cls(len(arr), _pack(arr.reshape(1, -1))[0])

    @classmethod
    def from_int(cls, value: int, length: int) -> "Gf2Vector":
        if value < 0 or value >> length:
            raise ArgumentError("integer does not fit in vector length")
        w = n_words(length)
        words = np.array([(value >> (WORD * i)) & 0xFFFFFFFFFFFFFFFF for i in range(w)], dtype=np.uint64)
        return cls(length, words)

    @classmethod
    def from_support(cls, support: Iterable[int], length: int) -> "Gf2Vector":
        v = cls.zeros(length)
        for i in support:
            if not 0 <= i < length:
                raise ArgumentError(f"index {i} out of range for length {length}")
            v.words[i // WORD] ^= np.uint64(1) << np.uint64(i % WORD)
        return v

    def to_int(self) -> int:
        return sum(int(w) << (WORD * i) for i, w in enumerate(self.words))

    def bits(self) -> list[int]:
        return _unpack(self.words.reshape(1, -1), self.length)[0].tolist()

    def support(self) -> list[int]:
        return [i for i, b in enumerate(self.bits()) if b]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return int((self.words[i // WORD] >> np.uint64(i % WORD)) & np.uint64(1))

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: "Gf2Vector") -> "Gf2Vector":
        if self.length != other.length:
            raise ArgumentError("vector length mismatch")
        return Gf2Vector(self.length, self.words ^ other.words)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Vector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def popcount(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def to_text(self) -> str:
        return "".join(map(str, self.bits()))

    def __repr__(self) -> str:
        return f"Gf2Vector({self.to_text()!r})"


@dataclass(eq=False)
class Gf2Matrix:
    rows: int
    cols: int
    words: np.ndarray  # shape (rows, n_words(cols)), dtype uint64

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, np.zeros((rows, n_words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, size: int) -> "Gf2Matrix":
        m = cls.zeros(size, size)
        for i in range(size):
            m.words[i, i // WORD] = np.uint64(1) << np.uint64(i % WORD)
        return m

    @classmethod
    def from_dense(cls, dense: np.ndarray | Sequence[Sequence[int]]) -> "Gf2Matrix":
        arr = np.asarray(dense, dtype=np.uint8)
        if arr.ndim != 2:
            arr = arr.reshape(len(arr), -1)
        return cls(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def from_int_rows(cls, rows: Sequence[int], cols: int) -> "Gf2Matrix":
        m = cls.zeros(len(rows), cols)
        for i, r in enumerate(rows):
            m.words[i] = Gf2Vector.from_int(r, cols).words
        return m

    @classmethod
    def from_text(cls, text: str) -> "Gf2Matrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if any(set(ln) - {"0", "1"} for ln in lines):
            raise ArgumentError("matrix text must contain only '0' and '1'")
        if len({len(ln) for ln in lines}) > 1:
            raise ArgumentError("ragged matrix text")
        return cls.from_dense([[int(c) for c in ln] for ln in lines])

    @classmethod
    def random(cls, rows: int, cols: int, rng: np.random.Generator, density: float = 0.5) -> "Gf2Matrix":
        return cls.from_dense(rng.random((rows, cols)) < density)

    def to_dense(self) -> np.ndarray:
        return _unpack(self.words, self.cols)

    def to_text(self) -> str:
        return "\n".join("".join(map(str, row)) for row in self.to_dense().tolist())

    def to_int_rows(self) -> list[int]:
        return [Gf2Vector(self.cols, self.words[i]).to_int() for i in range(self.rows)]

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.cols, self.words[i].copy())

    def copy(self) -> "Gf2Matrix":
        return Gf2Matrix(self.rows, self.cols, self.words.copy())

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix.from_dense(self.to_dense().T)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(
            np.array_equal(self.words, other.words)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols


@numba.njit(cache=True)
def _eliminate(a, ncols, full):
    """In-place row echelon form; reduced if ``full``. Returns pivot columns.

    The pivot for each column is the first unresolved row with a one there.
    """
    nrows, nw = a.shape
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    r = 0
    one = np.uint64(1)
    for c in range(ncols):
        if r == nrows:
            break
        wi = c >> 6
        bit = one << np.uint64(c & 63)
        p = -1
        for i in range(r, nrows):
            if a[i, wi] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(wi, nw):
                t = a[p, j]
                a[p, j] = a[r, j]
                a[r, j] = t
        start = 0 if full else r + 1
        for i in range(start, nrows):
            if i != r and (a[i, wi] & bit):
                # columns left of c are already zero in the pivot row
                for j in range(wi, nw):
                    a[i, j] ^= a[r, j]
        pivots[r] = c
        r += 1
    return pivots[:r]


def _fold_parity(x: np.ndarray) -> np.ndarray:
    """Parity of each row of a 2-D uint64 array."""
    acc = np.bitwise_xor.reduce(x, axis=1) if x.shape[1] else np.zeros(x.shape[0], np.uint64)
    return (np.bitwise_count(acc) & 1).astype(np.uint8)


def rank(m: Gf2Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    work = np.ascontiguousarray(m.words.copy())
    return len(_eliminate(work, m.cols, False))


def matvec(a: Gf2Matrix, x: Gf2Vector) -> Gf2Vector:
    if x.length != a.cols:
        raise ArgumentError(f"vector length {x.length} != matrix cols {a.cols}")
    parity = _fold_parity(a.words & x.words[np.newaxis, :])
    return Gf2Vector(a.rows, _pack(parity.reshape(1, -1))[0]) if a.rows else Gf2Vector.zeros(0)


def solve(a: Gf2Matrix, b: Gf2Vector) -> Gf2Vector:
    """Return some x with a.x = b; free variables are set to zero.

    Raises :class:`Inconsistent` when the system has no solution.
    """
    if b.length != a.rows:
        raise ArgumentError(f"rhs length {b.length} != matrix rows {a.rows}")
    aug_cols = a.cols + 1
    dense = np.zeros((a.rows, aug_cols), dtype=np.uint8)
    dense[:, : a.cols] = a.to_dense()
    dense[:, a.cols] = b.bits() if a.rows else []
    aug = _pack(dense)
    pivots = _eliminate(aug, a.cols, True)
    reduced = _unpack(aug, aug_cols)
    rhs = reduced[:, a.cols]
    r = len(pivots)
    if rhs[r:].any():
        raise Inconsistent("system has no solution over GF(2)")
    x = np.zeros(a.cols, dtype=np.uint8)
    x[pivots] = rhs[:r]
    sol = Gf2Vector.from_bits(x) if a.cols else Gf2Vector.zeros(0)
    if matvec(a, sol) != b:
        raise AssertionError("GF(2) solve produced a vector that does not satisfy the system")
    return sol


def pivot_columns(m: Gf2Matrix) -> list[int]:
    work = np.ascontiguousarray(m.words.copy())
    return _eliminate(work, m.cols, False).tolist() if m.rows and m.cols else []
