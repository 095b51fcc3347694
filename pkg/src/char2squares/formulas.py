"""Decompositions of tensor, exterior and symmetric squares of Jordan blocks.

Everything here is characteristic two.  V_n denotes the unipotent block
(cyclic 2-group case), W_n the nilpotent block (restricted Lie algebra
case).  Tensor products decompose identically for the two kinds; exterior
and symmetric squares do not.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (
    EMPTY_TYPE,
    Atom,
    Ext2,
    JordanType,
    Kind,
    ModuleExpr,
    Sum,
    Sym2,
    Tensor,
    cones_expansion,
    expr_kind,
)


@dataclass(frozen=True)
class QChoice:
    """The power of two q with q/2 < n <= q, i.e. the smallest q = 2^a >= n."""

    n: int
    q: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.q < self.n or self.q // 2 >= self.n or self.q & (self.q - 1):
            raise ValueError(f"q={self.q} invalid for n={self.n}")

    @classmethod
    def for_dim(cls, n: int) -> "QChoice":
        if n < 1:
            raise ValueError("n must be positive")
        return cls(n, 1 << (n - 1).bit_length())


def tensor_decompose(m: int, n: int) -> JordanType:
    """Jordan type of the action on the tensor product of blocks of sizes m, n.

    Valid for both the unipotent and the nilpotent interpretation.
    """
    if m < 1 or n < 1:
        raise ValueError("block sizes must be positive")
    a, b = sorted((m, n))
    return _tensor(a, b)


@lru_cache(maxsize=None)
def _tensor(m: int, n: int) -> JordanType:
    # invariant: 1 <= m <= n
    q = QChoice.for_dim(n).q
    if n == q:
        return JordanType.from_pairs([(q, m)])
    if m + n > q:
        # peel off n+m-q blocks of size q; remainder is the smaller tensor
        # product of the complementary block sizes
        rest = _tensor(*sorted((q - n, q - m)))
        return JordanType.from_pairs([(q, m + n - q)]) + rest
    # m + n <= q: complement every part of the smaller product in q
    inner = _tensor(*sorted((m, q - n)))
    return JordanType.from_pairs((q - s, mult) for s, mult in inner.parts)


@lru_cache(maxsize=None)
def ext2_unipotent(n: int) -> JordanType:
    """Exterior square of the unipotent block V_n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return EMPTY_TYPE
    q = QChoice.for_dim(n).q
    head = JordanType.from_pairs([(q, n - q // 2 - 1), (3 * q // 2 - n, 1)])
    tail = ext2_unipotent(q - n) if q - n >= 2 else EMPTY_TYPE
    return head + tail


def sym2_unipotent(n: int) -> JordanType:
    """Symmetric square of the unipotent block V_n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return JordanType.from_pairs([(1, 1)])
    q = QChoice.for_dim(n).q
    head = JordanType.from_pairs([(q, n - q // 2), (q // 2, 1)])
    tail = ext2_unipotent(q - n) if q - n >= 2 else EMPTY_TYPE
    return head + tail


def ext2_nilpotent(n: int) -> JordanType:
    """Exterior square of the nilpotent block W_n, in closed form.

    With the consecutive-ones expansion of n, each exponent b_k > 0
    contributes blocks of size 2^b_k - 1 with multiplicity
    2^(b_k - 1) - n_{k+1}.
    """
    exp = cones_expansion(n)
    nk = exp.suffix_values()
    return JordanType.from_pairs(
        ((1 << b) - 1, (1 << (b - 1)) - nk[k + 1])
        for k, b in enumerate(exp.betas)
        if b > 0
    )


def sym2_nilpotent(n: int) -> JordanType:
    """Symmetric square of the nilpotent block W_n, in closed form.

    Same multiplicities as the exterior square but with block sizes 2^b_k,
    plus ceil(n/2) blocks of size one.
    """
    exp = cones_expansion(n)
    nk = exp.suffix_values()
    pairs = [(1, (n + 1) // 2)]
    pairs.extend(
        (1 << b, (1 << (b - 1)) - nk[k + 1])
        for k, b in enumerate(exp.betas)
        if b > 0
    )
    return JordanType.from_pairs(pairs)


@lru_cache(maxsize=None)
def ext2_nilpotent_rec(n: int) -> JordanType:
    """Exterior square of W_n via the recursion on q - n (cross-check path)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return EMPTY_TYPE
    q = QChoice.for_dim(n).q
    head = JordanType.from_pairs([(q - 1, n - q // 2)])
    tail = ext2_nilpotent_rec(q - n) if q - n >= 2 else EMPTY_TYPE
    return head + tail


@lru_cache(maxsize=None)
def sym2_nilpotent_rec(n: int) -> JordanType:
    """Symmetric square of W_n via the recursion on q - n (cross-check path)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return JordanType.from_pairs([(1, 1)])
    q = QChoice.for_dim(n).q
    head = JordanType.from_pairs([(q, n - q // 2), (1, n - q // 2)])
    tail = sym2_nilpotent_rec(q - n) if q - n >= 1 else EMPTY_TYPE
    return head + tail


def ext2_block(n: int, kind: Kind) -> JordanType:
    return ext2_unipotent(n) if kind == "unipotent" else ext2_nilpotent(n)


def sym2_block(n: int, kind: Kind) -> JordanType:
    return sym2_unipotent(n) if kind == "unipotent" else sym2_nilpotent(n)


# --- expression evaluation ------------------------------------------------


def decompose_expr(expr: ModuleExpr) -> JordanType:
    """Fully decompose a module expression into a Jordan type.

    Functors distribute over direct sums via
    F(A + B) = F(A) + (A tensor B) + F(B) for F in {ext2, sym2}, and the
    tensor product is bilinear.
    """
    kind = expr_kind(expr)
    return _eval(expr, kind)


def _eval(expr: ModuleExpr, kind: Kind) -> JordanType:
    if isinstance(expr, Atom):
        return JordanType.from_pairs([(expr.dim, expr.multiplicity)])
    if isinstance(expr, Sum):
        total = EMPTY_TYPE
        for t in expr.terms:
            total = total + _eval(t, kind)
        return total
    if isinstance(expr, Tensor):
        left = _eval(expr.left, kind)
        right = _eval(expr.right, kind)
        total = EMPTY_TYPE
        for a, ca in left.parts:
            for b, cb in right.parts:
                total = total + tensor_decompose(a, b).scaled(ca * cb)
        return total
    if isinstance(expr, (Ext2, Sym2)):
        inner = _eval(expr.inner, kind)
        square = ext2_block if isinstance(expr, Ext2) else sym2_block
        total = EMPTY_TYPE
        parts = inner.parts
        for i, (a, c) in enumerate(parts):
            total = total + square(a, kind).scaled(c)
            # cross terms among the c copies of the same atom
            total = total + tensor_decompose(a, a).scaled(c * (c - 1) // 2)
            for b, cb in parts[i + 1 :]:
                total = total + tensor_decompose(a, b).scaled(c * cb)
        return total
    raise TypeError(f"not a module expression: {expr!r}")
