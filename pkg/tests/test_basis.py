import pytest

from char2squares.basis import (
    JordanChain,
    SparseVec,
    band_index,
    build_sym_basis,
    build_tensor_basis,
    build_w,
    build_z,
    chain_type,
    find_j0,
    format_chain,
    project_to_sym,
    verify_basis,
)
from char2squares.core import parse_jordan_type
from char2squares.formulas import sym2_nilpotent, tensor_decompose
from char2squares.gf2 import Gf2Matrix, mul, rank
from char2squares.oracle import basis_keys, square_action


def jt(text):
    return parse_jordan_type(text)


def tensor_terms(*pairs):
    return frozenset(pairs)


class TestBuildZ:
    def test_z1(self):
        assert build_z(1, 4).terms == tensor_terms((1, 1))

    def test_z2(self):
        assert build_z(2, 4).terms == tensor_terms((1, 2), (2, 1))

    def test_z3_in_kernel(self):
        z3 = build_z(3, 5)
        assert z3.terms == tensor_terms((1, 3), (2, 2), (3, 1))
        assert z3.apply_e().is_zero()

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            build_z(5, 4)

    @pytest.mark.parametrize("n", [1, 4, 7, 12])
    def test_z_spans_kernel(self, n):
        # Every z_s is killed by the derivation, they are independent, and
        # their count matches the kernel dimension of the dense action.
        act = square_action("nilpotent", "tensor", n)
        index = {k: i for i, k in enumerate(basis_keys("tensor", n))}
        zs = [build_z(s, n) for s in range(1, n + 1)]
        assert all(z.apply_e().is_zero() for z in zs)
        zmat = Gf2Matrix(n, n * n, tuple(z.to_bits(index) for z in zs))
        assert rank(zmat) == n
        assert act.rows - rank(act) == n


class TestFindJ0:
    @pytest.mark.parametrize(
        "s, n, beta, expected", [(1, 4, 2, 0), (4, 4, 2, 0), (2, 6, 3, 0)]
    )
    def test_examples(self, s, n, beta, expected):
        assert find_j0(s, n, beta) == expected

    def test_scan_agrees_with_direct_check(self):
        for n in range(1, 33):
            from char2squares.core import cones_expansion

            exp = cones_expansion(n)
            for s in range(1, n + 1):
                k = band_index(s, n, exp)
                beta = exp.betas[k - 1]
                if beta == 0:
                    continue
                j0 = find_j0(s, n, beta)
                half, step = 1 << (beta - 1), 1 << beta
                assert s <= s // 2 + half + j0 * step <= n
                assert s <= (s + 1) // 2 + half + j0 * step <= n
                for smaller in range(j0):
                    lo = s // 2 + half + smaller * step
                    hi = (s + 1) // 2 + half + smaller * step
                    assert not (s <= lo <= n and s <= hi <= n)


class TestBuildW:
    def test_w1_n4(self):
        assert build_w(1, 4).terms == tensor_terms((2, 3))

    def test_w4_n4(self):
        assert build_w(4, 4).terms == tensor_terms((4, 4))

    def test_last_band_is_z(self):
        # odd n puts s = n alone in the beta = 0 band, where w_s = z_s
        for n in (3, 5, 7, 9, 11):
            assert build_w(n, n) == build_z(n, n)

    def test_terminal_identity(self):
        # e^(2^beta - 1) w_s = z_s across all bands
        from char2squares.core import cones_expansion

        for n in range(1, 25):
            exp = cones_expansion(n)
            for s in range(1, n + 1):
                beta = exp.betas[band_index(s, n, exp) - 1]
                v = build_w(s, n)
                for _ in range((1 << beta) - 1):
                    v = v.apply_e()
                assert v == build_z(s, n), (n, s)


class TestTensorBasis:
    def test_n1(self):
        chains = build_tensor_basis(1)
        assert len(chains) == 1
        assert chains[0].vectors[0].terms == tensor_terms((1, 1))

    def test_n4_chain_lengths(self):
        assert sorted(c.length for c in build_tensor_basis(4)) == [4, 4, 4, 4]

    def test_n3_chain_lengths(self):
        assert sorted(c.length for c in build_tensor_basis(3)) == [1, 4, 4]

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 9, 13, 21])
    def test_verified_against_dense_action(self, n):
        chains = build_tensor_basis(n)
        action = square_action("nilpotent", "tensor", n)
        terminals = [build_z(c.s, n) for c in chains]
        report = verify_basis(chains, action, terminals)
        assert report.ok, report.failures
        assert chain_type(chains) == tensor_decompose(n, n)

    def test_corrupted_chain_detected(self):
        chains = build_tensor_basis(6)
        bad = chains[0]
        swapped = JordanChain(bad.s, (bad.vectors[1],) + (bad.vectors[0],) + bad.vectors[2:])
        chains[0] = swapped
        report = verify_basis(chains, square_action("nilpotent", "tensor", 6))
        assert not report.ok
        assert any("chain 0" in f and "link" in f for f in report.failures)


class TestSymBasis:
    def test_n1(self):
        chains = build_sym_basis(1)
        assert [c.length for c in chains] == [1]
        assert chains[0].vectors[0].terms == tensor_terms((1, 1))

    def test_n2_lengths(self):
        assert sorted(c.length for c in build_sym_basis(2)) == [1, 2]

    def test_n5_lengths(self):
        assert sorted(c.length for c in build_sym_basis(5)) == [1, 1, 1, 4, 8]

    def test_n9_type(self):
        assert chain_type(build_sym_basis(9)) == jt("16 8^3 1^5")

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 9, 13, 21])
    def test_verified_against_dense_action(self, n):
        chains = build_sym_basis(n)
        action = square_action("nilpotent", "sym2", n)
        report = verify_basis(chains, action)
        assert report.ok, report.failures
        assert chain_type(chains) == sym2_nilpotent(n)

    @pytest.mark.parametrize("n", range(1, 17))
    def test_projection_compatibility(self, n):
        # pushing the tensor basis through the quotient map and dropping
        # zeros gives exactly the symmetric-square basis vectors
        projected = set()
        for chain in build_tensor_basis(n):
            for v in chain.vectors:
                image = project_to_sym(v)
                if not image.is_zero():
                    projected.add(image.terms)
        sym_vectors = {
            v.terms for chain in build_sym_basis(n) for v in chain.vectors
        }
        assert projected == sym_vectors


class TestSparseVec:
    def test_validation(self):
        with pytest.raises(ValueError):
            SparseVec("tensor", 3, frozenset({(0, 1)}))
        with pytest.raises(ValueError):
            SparseVec("sym2", 3, frozenset({(2, 1)}))
        with pytest.raises(ValueError):
            SparseVec("other", 3, frozenset())

    def test_sym_derivation_cancels_square(self):
        v = SparseVec("sym2", 3, frozenset({(2, 2)}))
        assert v.apply_e().is_zero()

    def test_apply_e_matches_matrix(self):
        n = 5
        action = square_action("nilpotent", "sym2", n)
        index = {k: i for i, k in enumerate(basis_keys("sym2", n))}
        cols = action.columns()
        for key, pos in index.items():
            sparse = SparseVec("sym2", n, frozenset({key})).apply_e()
            assert sparse.to_bits(index) == cols[pos]

    def test_format_chain(self):
        chain = build_tensor_basis(2)[1]
        text = format_chain(chain)
        assert "v" in text and "|" in text

    def test_addition(self):
        a = SparseVec("tensor", 3, frozenset({(1, 1), (2, 2)}))
        b = SparseVec("tensor", 3, frozenset({(2, 2), (3, 3)}))
        assert (a + b).terms == frozenset({(1, 1), (3, 3)})
