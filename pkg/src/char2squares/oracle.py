"""Brute-force ground truth: explicit GF(2) matrices for actions on squares.

Builds the matrix of a unipotent operator u (acting diagonally) or a
nilpotent operator e (acting as a derivation) on tensor products, exterior
squares and symmetric squares, then extracts Jordan types with the exact
linear algebra kernel.
"""

from __future__ import annotations

import os

from .core import Atom, Ext2, JordanType, Kind, ModuleExpr, Sum, Sym2, Tensor
from .gf2 import Gf2Matrix, identity, jordan_type_of_nilpotent

Functor = str  # one of "tensor", "ext2", "sym2"

FUNCTORS = ("tensor", "ext2", "sym2")

DEFAULT_DIM_CAP = 20_000
CAP_ENV_VAR = "CHAR2SQUARES_ORACLE_CAP"


class OracleCapExceeded(RuntimeError):
    """The requested functor space is larger than the configured cap."""

    def __init__(self, dim: int, cap: int):
        super().__init__(f"oracle space has dimension {dim}, above the cap {cap}")
        self.dim = dim
        self.cap = cap


def dim_cap() -> int:
    """Active oracle dimension cap (overridable via environment)."""
    value = os.environ.get(CAP_ENV_VAR)
    return int(value) if value else DEFAULT_DIM_CAP


def functor_dim(functor: Functor, n: int, m: int | None = None) -> int:
    if functor == "tensor":
        return n * (m if m is not None else n)
    if functor == "ext2":
        return n * (n - 1) // 2
    if functor == "sym2":
        return n * (n + 1) // 2
    raise ValueError(f"unknown functor {functor!r}")


def _check_cap(dim: int, cap: int | None) -> None:
    if cap is not None and dim > cap:
        raise OracleCapExceeded(dim, cap)


def _check_kind(kind: Kind) -> None:
    if kind not in ("unipotent", "nilpotent"):
        raise ValueError(f"unknown kind {kind!r}")


def block_matrix(kind: Kind, n: int) -> Gf2Matrix:
    """Single Jordan block in upper-shift convention: e v_1 = 0, e v_i = v_{i-1}."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_kind(kind)
    shift = tuple((1 << (i + 1)) if i + 1 < n else 0 for i in range(n))
    mat = Gf2Matrix(n, n, shift)
    if kind == "unipotent":
        mat = mat + identity(n)
    return mat


def basis_keys(functor: Functor, n: int, m: int | None = None) -> list[tuple[int, int]]:
    """Canonical ordered basis, as 1-based index pairs in lex order.

    tensor: all (i, j); ext2: i < j; sym2: i <= j.  For mixed tensors the
    first index runs over 1..m and the second over 1..n.
    """
    if functor == "tensor":
        rows = m if m is not None else n
        return [(i, j) for i in range(1, rows + 1) for j in range(1, n + 1)]
    if functor == "ext2":
        return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if functor == "sym2":
        return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    raise ValueError(f"unknown functor {functor!r}")


# --- generic functor actions ---------------------------------------------
#
# Builders below take the matrix of the operator on the base space(s); the
# basis of a product space is ordered lexicographically with the first index
# major, matching basis_keys.


def tensor_of(a: Gf2Matrix, b: Gf2Matrix, kind: Kind) -> Gf2Matrix:
    """Action on the tensor product: a (x) b, or the derivation a (x) 1 + 1 (x) b."""
    _check_kind(kind)
    da, db = a.rows, b.rows
    rows = []
    for i in range(da):
        arow = a.data[i]
        for j in range(db):
            if kind == "unipotent":
                packed = 0
                x = arow
                while x:
                    low = x & -x
                    packed ^= b.data[j] << ((low.bit_length() - 1) * db)
                    x ^= low
            else:
                packed = b.data[j] << (i * db)
                x = arow
                while x:
                    low = x & -x
                    packed ^= 1 << ((low.bit_length() - 1) * db + j)
                    x ^= low
            rows.append(packed)
    return Gf2Matrix(da * db, da * db, tuple(rows))


def _pair_action(a: Gf2Matrix, kind: Kind, sym: bool) -> Gf2Matrix:
    # shared builder for the exterior (sym=False) and symmetric (sym=True) square
    _check_kind(kind)
    d = a.rows
    if sym:
        keys = [(i, j) for i in range(d) for j in range(i, d)]
    else:
        keys = [(i, j) for i in range(d) for j in range(i + 1, d)]
    index = {key: pos for pos, key in enumerate(keys)}
    cols = a.columns()

    def bits_of(col: int) -> list[int]:
        out = []
        while col:
            low = col & -col
            out.append(low.bit_length() - 1)
            col ^= low
        return out

    col_supports = [bits_of(c) for c in cols]
    rows = [0] * len(keys)
    for (i, j), col in index.items():
        image: dict[tuple[int, int], int] = {}

        def toggle(k: int, l: int) -> None:
            if k == l and not sym:
                return
            key = (k, l) if k <= l else (l, k)
            image[key] = image.get(key, 0) ^ 1

        if kind == "nilpotent":
            for k in col_supports[i]:
                toggle(k, j)
            for l in col_supports[j]:
                toggle(i, l)
        else:
            for k in col_supports[i]:
                for l in col_supports[j]:
                    toggle(k, l)
        bit = 1 << col
        for key, coeff in image.items():
            if coeff:
                rows[index[key]] |= bit
    return Gf2Matrix(len(keys), len(keys), tuple(rows))


def ext2_of(a: Gf2Matrix, kind: Kind) -> Gf2Matrix:
    return _pair_action(a, kind, sym=False)


def sym2_of(a: Gf2Matrix, kind: Kind) -> Gf2Matrix:
    return _pair_action(a, kind, sym=True)


def direct_sum(mats: list[Gf2Matrix]) -> Gf2Matrix:
    dim = sum(m.rows for m in mats)
    rows = []
    offset = 0
    for m in mats:
        rows.extend(row << offset for row in m.data)
        offset += m.cols
    return Gf2Matrix(dim, dim, tuple(rows))


# --- concrete oracle entry points ----------------------------------------


def square_action(
    kind: Kind, functor: Functor, n: int, *, cap: int | None = DEFAULT_DIM_CAP
) -> Gf2Matrix:
    """Matrix of u or e on the chosen square of the size-n block."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_cap(functor_dim(functor, n), cap)
    block = block_matrix(kind, n)
    if functor == "tensor":
        return tensor_of(block, block, kind)
    if functor == "ext2":
        return ext2_of(block, kind)
    return sym2_of(block, kind)


def tensor_action(
    kind: Kind, m: int, n: int, *, cap: int | None = DEFAULT_DIM_CAP
) -> Gf2Matrix:
    """Matrix of u or e on the mixed tensor product of blocks of sizes m, n."""
    if m < 1 or n < 1:
        raise ValueError("block sizes must be positive")
    _check_cap(m * n, cap)
    return tensor_of(block_matrix(kind, m), block_matrix(kind, n), kind)


def expr_action(
    expr: ModuleExpr, kind: Kind, *, cap: int | None = DEFAULT_DIM_CAP
) -> Gf2Matrix:
    """Matrix of the operator on an arbitrary module expression."""
    if isinstance(expr, Atom):
        if expr.kind != kind:
            raise ValueError("expression kind mismatch")
        _check_cap(expr.dim * expr.multiplicity, cap)
        return direct_sum([block_matrix(kind, expr.dim)] * expr.multiplicity)
    if isinstance(expr, Sum):
        mats = [expr_action(t, kind, cap=cap) for t in expr.terms]
        total = sum(m.rows for m in mats)
        _check_cap(total, cap)
        return direct_sum(mats)
    if isinstance(expr, Tensor):
        left = expr_action(expr.left, kind, cap=cap)
        right = expr_action(expr.right, kind, cap=cap)
        _check_cap(left.rows * right.rows, cap)
        return tensor_of(left, right, kind)
    if isinstance(expr, (Ext2, Sym2)):
        inner = expr_action(expr.inner, kind, cap=cap)
        d = inner.rows
        _check_cap(d * (d + 1) // 2, cap)
        return ext2_of(inner, kind) if isinstance(expr, Ext2) else sym2_of(inner, kind)
    raise TypeError(f"not a module expression: {expr!r}")


def oracle_jordan_type(
    kind: Kind,
    functor: Functor,
    n: int,
    m: int | None = None,
    *,
    cap: int | None = DEFAULT_DIM_CAP,
) -> JordanType:
    """Ground-truth Jordan type via explicit matrices and rank sequences."""
    if m is not None and functor != "tensor":
        raise ValueError("m is only meaningful for the tensor functor")
    if functor == "tensor" and m is not None:
        mat = tensor_action(kind, m, n, cap=cap)
    else:
        mat = square_action(kind, functor, n, cap=cap)
    return _jordan_of_action(mat, kind)


def oracle_expr_jordan_type(
    expr: ModuleExpr, kind: Kind, *, cap: int | None = DEFAULT_DIM_CAP
) -> JordanType:
    """Ground-truth Jordan type of the operator on a module expression."""
    return _jordan_of_action(expr_action(expr, kind, cap=cap), kind)


def _jordan_of_action(mat: Gf2Matrix, kind: Kind) -> JordanType:
    if kind == "unipotent":
        mat = mat + identity(mat.rows)
    return jordan_type_of_nilpotent(mat)
