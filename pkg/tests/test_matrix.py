import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORNER, DIAG, ROW, dm, dual_matrices
from dualmp.dsvd import dual_svd
from dualmp.errors import InvalidRank, ShapeMismatch
from dualmp.matrix import (
    DualMatrix,
    conj_transpose,
    essential_split,
    is_hermitian,
    is_unitary,
    matmul,
    random_columns_orthonormal,
    random_dual,
    random_dual_unitary,
    random_essential,
)
from dualmp.scalar import DualComplex


def test_row_times_diag_kills_eps_squared():
    # the (1,2) entry is ε·ε = 0
    P = matmul(ROW, DIAG)
    assert np.array_equal(P.std, [[1, 0]]) and np.array_equal(P.dual, [[0, 0]])


def test_identity_and_nilpotent_products():
    A = random_dual(3, 4, 2, seed=0)
    assert (A @ DualMatrix.identity(4)).allclose(A, 0)
    E = DualMatrix.eps(np.ones((2, 3))) @ DualMatrix.eps(np.ones((3, 2)))
    assert E.max_abs() == 0


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        ROW @ ROW
    with pytest.raises(ShapeMismatch):
        ROW + DIAG


def test_conj_transpose_examples():
    T = conj_transpose(ROW)
    assert np.array_equal(T.std, [[1], [0]]) and np.array_equal(T.dual, [[0], [1]])
    H = dm([[2, 1j], [-1j, 3]], [[0, 1], [1, 0]])
    assert conj_transpose(H).allclose(H, 0)


@given(dual_matrices(), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_product_reversal(A, n, seed):
    B = random_dual(A.shape[1], n, min(A.shape[1], n), seed)
    assert ((A @ B).H - B.H @ A.H).max_abs() <= 1e-12 * (1 + A.max_abs() * B.max_abs())


def test_entry_access():
    assert ROW[0, 1] == DualComplex(0, 1)


def test_hermitian_unitary_predicates():
    I = DualMatrix.identity(3)
    assert is_hermitian(I) and is_unitary(I)
    N = dm([[0, 1], [0, 0]])
    assert not is_hermitian(N) and not is_unitary(N)
    with pytest.raises(ShapeMismatch):
        is_unitary(ROW)


@pytest.mark.parametrize("seed", range(5))
def test_random_dual_unitary_is_unitary(seed):
    assert is_unitary(random_dual_unitary(3, seed))


def test_generators():
    assert random_dual(4, 3, 0, seed=0).std.any() == False  # noqa: E712
    Q = random_columns_orthonormal(4, 2, seed=0)
    assert (Q.H @ Q - DualMatrix.identity(2)).max_abs() <= 1e-13
    with pytest.raises(InvalidRank):
        random_dual(2, 3, 3, seed=0)
    with pytest.raises(InvalidRank):
        random_columns_orthonormal(2, 3, seed=0)


def test_split_invertible_standard_part():
    A = random_dual(3, 3, 3, seed=2)
    sp = essential_split(A)
    assert sp.nonessential.max_abs() < 1e-12 and sp.essential.allclose(A, 1e-12)


def test_split_corner():
    sp = essential_split(CORNER)
    assert sp.essential.max_abs() == 0
    assert sp.nonessential.allclose(CORNER, 0)
    assert sp.nonessential_norm == 1


def test_split_structural_zero():
    assert essential_split(random_essential(5, 4, 2, seed=3)).nonessential_norm < 1e-12


@given(dual_matrices(max_dim=6))
def test_split_invariants(A):
    sp = essential_split(A)
    assert np.array_equal((sp.essential + sp.nonessential).std, A.std)
    assert np.abs((sp.essential + sp.nonessential).dual - A.dual).max() <= 1e-15 * (1 + np.abs(A.dual).max())
    assert not sp.nonessential.std.any()
    S = np.linalg.pinv(A.std, rcond=1e-10)
    N = sp.nonessential.dual
    assert np.abs(A.std @ S @ N).max() <= 1e-10 and np.abs(N @ S @ A.std).max() <= 1e-10
    # idempotent
    assert essential_split(sp.essential).nonessential_norm <= 1e-10


@pytest.mark.parametrize("seed", range(40))
def test_split_matches_dual_svd(seed):
    rng = np.random.default_rng(seed)
    m, n = (int(x) for x in rng.integers(1, 7, size=2))
    A = random_dual(m, n, int(rng.integers(0, min(m, n) + 1)), rng)
    dec = dual_svd(A)
    svd_n = dec.U @ dec.sigma_matrix("infinitesimal") @ dec.V.H
    assert (svd_n - essential_split(A).nonessential).max_abs() <= 1e-10
