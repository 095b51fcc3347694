"""Explicit Jordan bases for the nilpotent action on tensor and symmetric squares.

The tensor-square basis is assembled from one chain per source index s:
the chain top w_s is a short anti-diagonal sum of basis tensors chosen so
that applying the derivation 2^b - 1 times lands exactly on the kernel
vector z_s.  Projecting to the symmetric square yields its Jordan basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import ConesExpansion, JordanType, cones_expansion
from .gf2 import Gf2Matrix, rank as gf2_rank
from .oracle import basis_keys

Space = str  # "tensor" or "sym2"


@dataclass(frozen=True)
class SparseVec:
    """GF(2) vector in the tensor or symmetric square, as a set of monomials.

    Terms are 1-based index pairs; symmetric-square pairs are normalized to
    i <= j.  Out-of-range indices never appear (they denote zero vectors).
    """

    space: Space
    n: int
    terms: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.space not in ("tensor", "sym2"):
            raise ValueError(f"unknown space {self.space!r}")
        for i, j in self.terms:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"index ({i}, {j}) out of range for n={self.n}")
            if self.space == "sym2" and i > j:
                raise ValueError("symmetric-square terms must satisfy i <= j")

    def is_zero(self) -> bool:
        return not self.terms

    def apply_e(self) -> "SparseVec":
        """Derivation action: v_i v_j -> v_{i-1} v_j + v_i v_{j-1} over GF(2)."""
        acc: set[tuple[int, int]] = set()
        for i, j in self.terms:
            for a, b in ((i - 1, j), (i, j - 1)):
                if a < 1 or b < 1:
                    continue
                if self.space == "sym2" and a > b:
                    a, b = b, a
                key = (a, b)
                acc.symmetric_difference_update((key,))
        return SparseVec(self.space, self.n, frozenset(acc))

    def __add__(self, other: "SparseVec") -> "SparseVec":
        if (self.space, self.n) != (other.space, other.n):
            raise ValueError("vectors live in different spaces")
        return SparseVec(self.space, self.n, self.terms ^ other.terms)

    def to_bits(self, index: dict[tuple[int, int], int]) -> int:
        bits = 0
        for key in self.terms:
            bits |= 1 << index[key]
        return bits


@dataclass(frozen=True)
class JordanChain:
    """Chain [top, e top, e^2 top, ...]; the derivation kills the last vector."""

    s: int  # source index of the chain (1..n)
    vectors: tuple[SparseVec, ...]

    @property
    def top(self) -> SparseVec:
        return self.vectors[0]

    @property
    def length(self) -> int:
        return len(self.vectors)


def build_z(s: int, n: int) -> SparseVec:
    """Kernel vector z_s = sum of v_i tensor v_{s+1-i} for 1 <= i <= s."""
    if not (1 <= s <= n):
        raise ValueError(f"s={s} out of range for n={n}")
    return SparseVec("tensor", n, frozenset((i, s + 1 - i) for i in range(1, s + 1)))


def band_index(s: int, n: int, exp: ConesExpansion | None = None) -> int:
    """The unique k (1-based) with n_k > n - s >= n_{k+1}."""
    if not (1 <= s <= n):
        raise ValueError(f"s={s} out of range for n={n}")
    exp = exp or cones_expansion(n)
    nk = exp.suffix_values()
    for k in range(1, exp.r + 1):
        if nk[k - 1] > n - s >= nk[k]:
            return k
    raise AssertionError("suffix values failed to cover n - s")  # unreachable


def find_j0(s: int, n: int, beta: int) -> int:
    """Smallest j0 >= 0 sandwiching both half-point shifts inside [s, n].

    Requires s <= floor(s/2) + 2^(beta-1) + j0 2^beta <= n and the same with
    ceil(s/2).  Existence is guaranteed when beta is the band exponent of s.
    """
    if beta < 1:
        raise ValueError("beta must be positive")
    half = 1 << (beta - 1)
    step = 1 << beta
    for j0 in range(n + 1):
        lo = s // 2 + half + j0 * step
        hi = (s + 1) // 2 + half + j0 * step
        if s <= lo <= n and s <= hi <= n:
            return j0
        if lo > n:
            break
    raise ValueError(f"no valid j0 for s={s}, n={n}, beta={beta}")


def build_w(s: int, n: int) -> SparseVec:
    """Chain top w_s; equals z_s in the beta = 0 band."""
    exp = cones_expansion(n)
    k = band_index(s, n, exp)
    beta = exp.betas[k - 1]
    if beta == 0:
        return build_z(s, n)
    half = 1 << (beta - 1)
    step = 1 << beta
    j0 = find_j0(s, n, beta)
    terms: set[tuple[int, int]] = set()
    for j in range(-j0, j0 + 1):
        i = s // 2 + half + j * step
        jj = (s + 1) // 2 + half - j * step
        if 1 <= i <= n and 1 <= jj <= n:
            terms.symmetric_difference_update(((i, jj),))
    return SparseVec("tensor", n, frozenset(terms))


def _chain_from_top(top: SparseVec, length: int, s: int) -> JordanChain:
    vectors = [top]
    for _ in range(length - 1):
        vectors.append(vectors[-1].apply_e())
    return JordanChain(s, tuple(vectors))


def build_tensor_basis(n: int) -> list[JordanChain]:
    """Jordan basis of the derivation on the tensor square, one chain per s.

    The chain for s in band k has length 2^(b_k) and terminates at z_s.
    """
    if n < 1:
        raise ValueError("n must be positive")
    exp = cones_expansion(n)
    chains = []
    for s in range(1, n + 1):
        k = band_index(s, n, exp)
        chains.append(_chain_from_top(build_w(s, n), 1 << exp.betas[k - 1], s))
    return chains


def project_to_sym(vec: SparseVec) -> SparseVec:
    """Quotient map to the symmetric square; transposed pairs cancel over GF(2)."""
    if vec.space != "tensor":
        raise ValueError("projection applies to tensor-square vectors")
    acc: set[tuple[int, int]] = set()
    for i, j in vec.terms:
        key = (i, j) if i <= j else (j, i)
        acc.symmetric_difference_update((key,))
    return SparseVec("sym2", vec.n, frozenset(acc))


def build_sym_basis(n: int) -> list[JordanChain]:
    """Jordan basis of the derivation on the symmetric square.

    Even s contribute the single fixed vector pi(w_s); odd s in band k keep
    the full chain of length 2^(b_k) starting at pi(w_s).
    """
    if n < 1:
        raise ValueError("n must be positive")
    exp = cones_expansion(n)
    chains = []
    for s in range(1, n + 1):
        top = project_to_sym(build_w(s, n))
        if s % 2 == 0:
            chains.append(JordanChain(s, (top,)))
        else:
            k = band_index(s, n, exp)
            chains.append(_chain_from_top(top, 1 << exp.betas[k - 1], s))
    return chains


@dataclass
class VerificationReport:
    """Outcome of checking chains against a dense action matrix."""

    vector_count: int
    rank: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_basis(
    chains: list[JordanChain],
    action: Gf2Matrix,
    expected_terminals: list[SparseVec] | None = None,
) -> VerificationReport:
    """Check chain links, terminal kill, full rank and optional terminal values.

    Each chain must satisfy action.v_t = v_{t+1} with the last vector killed,
    all vectors together must be linearly independent, and when terminals are
    supplied the last vector of chain i must equal expected_terminals[i].
    """
    if not chains:
        return VerificationReport(0, 0)
    space = chains[0].top.space
    n = chains[0].top.n
    index = {key: pos for pos, key in enumerate(basis_keys(space, n))}
    dim = len(index)
    if action.rows != dim or action.cols != dim:
        raise ValueError(f"action matrix is {action.rows}x{action.cols}, expected {dim}x{dim}")
    columns = action.columns()

    def act(bits: int) -> int:
        out = 0
        x = bits
        while x:
            low = x & -x
            out ^= columns[low.bit_length() - 1]
            x ^= low
        return out

    failures = []
    all_bits = []
    for ci, chain in enumerate(chains):
        bits = [v.to_bits(index) for v in chain.vectors]
        all_bits.extend(bits)
        for pos, b in enumerate(bits):
            if b == 0:
                failures.append(f"chain {ci} (s={chain.s}): vector {pos} is zero")
            image = act(b)
            if pos + 1 < len(bits):
                if image != bits[pos + 1]:
                    failures.append(
                        f"chain {ci} (s={chain.s}): link {pos} -> {pos + 1} broken"
                    )
            elif image != 0:
                failures.append(
                    f"chain {ci} (s={chain.s}): terminal vector not killed"
                )
        if expected_terminals is not None:
            expected = expected_terminals[ci].to_bits(index)
            if bits[-1] != expected:
                failures.append(
                    f"chain {ci} (s={chain.s}): terminal differs from expected vector"
                )
    matrix_rank = gf2_rank(Gf2Matrix(len(all_bits), dim, tuple(all_bits)))
    if matrix_rank != len(all_bits):
        failures.append(
            f"chain vectors dependent: rank {matrix_rank} < count {len(all_bits)}"
        )
    return VerificationReport(len(all_bits), matrix_rank, failures)


def chain_type(chains: list[JordanChain]) -> JordanType:
    """Multiset of chain lengths as a Jordan type."""
    return JordanType.from_sizes(c.length for c in chains)


def format_chain(chain: JordanChain) -> str:
    """One-line dump: vectors as '+'-joined monomials 'vi*vj', ' | '-separated."""

    def fmt_vec(v: SparseVec) -> str:
        if v.is_zero():
            return "0"
        return "+".join(f"v{i}*v{j}" for i, j in sorted(v.terms))

    return " | ".join(fmt_vec(v) for v in chain.vectors)
