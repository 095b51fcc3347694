"""Dense exact linear algebra over GF(2) with bit-packed rows.

Each row of a matrix is a Python int: bit j holds the entry in column j.
Row XOR is then a single word-parallel operation, which is all Gaussian
elimination needs over GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import JordanType


@dataclass(frozen=True)
class Gf2Matrix:
    """Immutable bit-packed matrix over the two-element field."""

    rows: int
    cols: int
    data: tuple[int, ...]  # data[i] bit j = entry (i, j)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        mask = (1 << self.cols) - 1
        for row in self.data:
            if row < 0 or row & ~mask:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "Gf2Matrix":
        """Build from nested 0/1 lists; `cols` only needed when there are no rows."""
        if not entries:
            return cls(0, cols or 0, ())
        width = len(entries[0])
        data = []
        for row in entries:
            if len(row) != width:
                raise ValueError("ragged rows")
            packed = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ValueError(f"entry {v!r} not in GF(2)")
                packed |= v << j
            data.append(packed)
        return cls(len(entries), width, tuple(data))

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.cols)] for row in self.data]

    def transpose(self) -> "Gf2Matrix":
        out = [0] * self.cols
        for i, row in enumerate(self.data):
            bit = 1 << i
            x = row
            while x:
                low = x & -x
                out[low.bit_length() - 1] |= bit
                x ^= low
        return Gf2Matrix(self.cols, self.rows, tuple(out))

    def columns(self) -> list[int]:
        """Column bitmasks (bit i of column j = entry (i, j))."""
        return list(self.transpose().data)

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in addition")
        return Gf2Matrix(
            self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data))
        )

    def is_zero(self) -> bool:
        return not any(self.data)


def identity(n: int) -> Gf2Matrix:
    if n < 0:
        raise ValueError("negative dimension")
    return Gf2Matrix(n, n, tuple(1 << i for i in range(n)))


def mul(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    """Matrix product over GF(2); cost scales with the number of ones in a."""
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    bdata = b.data
    out = []
    for row in a.data:
        acc = 0
        x = row
        while x:
            low = x & -x
            acc ^= bdata[low.bit_length() - 1]
            x ^= low
        out.append(acc)
    return Gf2Matrix(a.rows, b.cols, tuple(out))


def _rank_of_rows(data: Iterable[int], cols: int) -> int:
    # Row reduction with the highest set bit as pivot; over GF(2) any
    # nonzero bit works and this keeps per-step cost at one bit_length call.
    pivots = [0] * (cols + 1)
    rank = 0
    for x in data:
        while x:
            b = x.bit_length()
            p = pivots[b]
            if not p:
                pivots[b] = x
                rank += 1
                break
            x ^= p
    return rank


def rank(m: Gf2Matrix) -> int:
    """Rank over GF(2) by bit-parallel Gaussian elimination (input unchanged)."""
    return _rank_of_rows(m.data, m.cols)


def is_nilpotent(m: Gf2Matrix) -> bool:
    """Whether m^n = 0 for n = m.rows, via repeated squaring."""
    if m.rows != m.cols:
        raise ValueError("nilpotency is defined for square matrices only")
    if m.rows == 0:
        return True
    p = m
    e = 1
    while e < m.rows:
        p = mul(p, p)
        e *= 2
    return p.is_zero()


def jordan_type_of_nilpotent(m: Gf2Matrix) -> JordanType:
    """Jordan block sizes of a nilpotent matrix from its rank sequence.

    The number of blocks of size >= k equals rank(m^(k-1)) - rank(m^k), so
    the multiplicity of size k is rank(m^(k-1)) - 2 rank(m^k) + rank(m^(k+1)).
    """
    if m.rows != m.cols:
        raise ValueError("matrix must be square")
    if not is_nilpotent(m):
        raise ValueError("matrix is not nilpotent")
    n = m.rows
    ranks = [n]  # rank of m^0
    power = m
    while ranks[-1] > 0:
        ranks.append(rank(power))
        if ranks[-1] > 0:
            power = mul(m, power)
    ranks.append(0)
    pairs = []
    for k in range(1, len(ranks) - 1):
        mult = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
        if mult:
            pairs.append((k, mult))
    return JordanType.from_pairs(pairs)
