import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from char2squares.core import JordanType
from char2squares.gf2 import (
    Gf2Matrix,
    identity,
    is_nilpotent,
    jordan_type_of_nilpotent,
    mul,
    rank,
)


def shift_matrix(n):
    """Upper-shift nilpotent block, built by hand."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
    return Gf2Matrix.from_rows(rows)


def naive_rank(rows_of_lists):
    """Independent oracle: Gaussian elimination on unpacked 0/1 lists."""
    mat = [list(r) for r in rows_of_lists]
    if not mat:
        return 0
    cols = len(mat[0])
    rank_count = 0
    pivot_row = 0
    for col in range(cols):
        pivot = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                mat[r] = [a ^ b for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        rank_count += 1
    return rank_count


def random_matrix(rng, rows, cols):
    return Gf2Matrix(rows, cols, tuple(rng.getrandbits(cols) for _ in range(rows)))


class TestConstruction:
    def test_identity_empty(self):
        m = identity(0)
        assert m.rows == m.cols == 0

    def test_identity_2(self):
        assert identity(2).to_lists() == [[1, 0], [0, 1]]

    def test_identity_negative(self):
        with pytest.raises(ValueError):
            identity(-1)

    def test_stray_bits_rejected(self):
        with pytest.raises(ValueError):
            Gf2Matrix(1, 2, (0b100,))

    def test_from_rows_rejects_non_binary(self):
        with pytest.raises(ValueError):
            Gf2Matrix.from_rows([[0, 2]])


class TestMul:
    def test_unipotent_order_two(self):
        u = Gf2Matrix.from_rows([[1, 1], [0, 1]])
        assert mul(u, u).to_lists() == [[1, 0], [0, 1]]

    def test_identity_law(self):
        rng = random.Random(7)
        m = random_matrix(rng, 3, 5)
        assert mul(identity(3), m) == m

    def test_shift_squared(self):
        # J_3(0)^2 has its only 1 in position (1,3), 1-indexed
        sq = mul(shift_matrix(3), shift_matrix(3))
        assert sq.to_lists() == [[0, 0, 1], [0, 0, 0], [0, 0, 0]]

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            mul(identity(2), identity(3))


class TestRank:
    def test_identity(self):
        assert rank(identity(5)) == 5

    def test_zero(self):
        assert rank(Gf2Matrix.zero(4, 4)) == 0

    def test_shift_squared_rank(self):
        sq = mul(shift_matrix(6), shift_matrix(6))
        assert rank(sq) == 4

    @pytest.mark.parametrize("seed", range(5))
    def test_against_naive_oracle(self, seed):
        rng = random.Random(seed)
        for _ in range(10):
            rows = rng.randrange(1, 65)
            cols = rng.randrange(1, 65)
            m = random_matrix(rng, rows, cols)
            assert rank(m) == naive_rank(m.to_lists())

    @given(st.integers(0, 2**30), st.integers(0, 2**30), st.integers(1, 6))
    def test_rank_of_product_bounded(self, seed_a, seed_b, n):
        rng_a, rng_b = random.Random(seed_a), random.Random(seed_b)
        a = random_matrix(rng_a, n, n)
        b = random_matrix(rng_b, n, n)
        assert rank(mul(a, b)) <= min(rank(a), rank(b))


class TestJordanType:
    def test_zero_matrix(self):
        t = jordan_type_of_nilpotent(Gf2Matrix.zero(6, 6))
        assert t == JordanType.from_pairs([(1, 6)])

    def test_single_block(self):
        assert jordan_type_of_nilpotent(shift_matrix(5)) == JordanType.from_sizes([5])

    def test_empty_matrix(self):
        assert jordan_type_of_nilpotent(Gf2Matrix.zero(0, 0)).parts == ()

    def test_direct_sum_of_blocks(self):
        sizes = [5, 3, 3, 1]
        n = sum(sizes)
        rows = [[0] * n for _ in range(n)]
        offset = 0
        for s in sizes:
            for i in range(s - 1):
                rows[offset + i][offset + i + 1] = 1
            offset += s
        t = jordan_type_of_nilpotent(Gf2Matrix.from_rows(rows))
        assert t.sizes() == sizes

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            jordan_type_of_nilpotent(Gf2Matrix.zero(2, 3))

    def test_rejects_non_nilpotent(self):
        with pytest.raises(ValueError):
            jordan_type_of_nilpotent(identity(3))

    def test_is_nilpotent(self):
        assert is_nilpotent(shift_matrix(7))
        assert not is_nilpotent(identity(2))

    @settings(max_examples=30)
    @given(st.integers(0, 2**30), st.integers(1, 10))
    def test_partition_of_dimension(self, seed, n):
        # random strictly upper triangular matrices are nilpotent
        rng = random.Random(seed)
        data = []
        for i in range(n):
            row = rng.getrandbits(n)
            row &= ~((1 << (i + 1)) - 1) & ((1 << n) - 1)
            data.append(row)
        t = jordan_type_of_nilpotent(Gf2Matrix(n, n, tuple(data)))
        assert t.total_dim == n
        assert t.sizes() == sorted(t.sizes(), reverse=True)
