import numpy as np
import pytest

from dualmp import kernel
from dualmp.errors import NotHermitian
from dualmp.matrix import random_complex, random_rank


def unitary_err(U):
    return np.abs(U.conj().T @ U - np.eye(U.shape[1])).max()


def test_svd_identity():
    U, s, V = kernel.svd(np.eye(3))
    assert np.allclose(s, 1)


def test_svd_diag_with_zero():
    U, s, V = kernel.svd(np.diag([3.0, 0.0]))
    assert np.allclose(s, [3, 0])
    assert np.allclose(np.abs(U), np.eye(2)) and np.allclose(np.abs(V), np.eye(2))


@pytest.mark.parametrize("shape", [(5, 3), (3, 5), (1, 4), (6, 6), (4, 1)])
def test_svd_reconstruction(shape):
    A = random_complex(*shape, seed=3)
    U, s, V = kernel.svd(A)
    S = np.zeros(shape)
    S[: len(s), : len(s)] = np.diag(s)
    assert np.linalg.norm(U @ S @ V.conj().T - A) / np.linalg.norm(A) <= 1e-12
    assert unitary_err(U) < 1e-12 and unitary_err(V) < 1e-12
    assert np.all(np.diff(s) <= 0) and np.all(s >= 0)
    # independent reference
    assert np.allclose(s, np.linalg.svd(A, compute_uv=False), atol=1e-12)


def test_svd_of_zero_and_empty():
    U, s, V = kernel.svd(np.zeros((3, 2)))
    assert np.all(s == 0) and unitary_err(U) < 1e-14
    assert kernel.rank(np.zeros((0, 3))) == 0


def test_pinv_examples():
    assert np.allclose(kernel.pinv(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))
    A = random_complex(4, 4, seed=1)
    assert np.abs(kernel.pinv(A) - np.linalg.inv(A)).max() < 1e-10


@pytest.mark.parametrize("seed", range(20))
def test_pinv_penrose(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 9, size=2)
    A = random_rank(m, n, int(rng.integers(0, min(m, n) + 1)), rng)
    X = kernel.pinv(A)
    for L, R in ((A @ X @ A, A), (X @ A @ X, X), ((A @ X).conj().T, A @ X), ((X @ A).conj().T, X @ A)):
        assert np.abs(L - R).max() <= 1e-10
    assert np.abs(X - np.linalg.pinv(A)).max() < 1e-9


def test_rank_examples():
    assert kernel.rank(np.zeros((3, 4))) == 0
    u, v = random_complex(5, 1, seed=0), random_complex(4, 1, seed=1)
    assert kernel.rank(u @ v.conj().T) == 1
    assert kernel.rank(np.eye(4)) == 4


def test_rank_absolute_floor():
    tiny = 1e-16 * random_complex(3, 3, seed=2)
    assert kernel.rank(tiny) == 3  # purely relative threshold sees full rank
    assert kernel.rank(tiny, 1e-10, atol=1e-10) == 0


def test_herm_eig_examples():
    w, Q = kernel.herm_eig(np.diag([2.0, 1.0]))
    assert np.allclose(w, [2, 1]) and np.allclose(np.abs(Q), np.eye(2))
    w, Q = kernel.herm_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(w, [1, -1])


@pytest.mark.parametrize("seed", range(5))
def test_herm_eig_reconstruction(seed):
    G = random_complex(6, 6, seed=seed)
    H = G + G.conj().T
    w, Q = kernel.herm_eig(H)
    assert np.abs(Q @ np.diag(w) @ Q.conj().T - H).max() <= 1e-11 * max(1, np.abs(H).max())
    assert unitary_err(Q) < 1e-12
    assert np.allclose(w, np.sort(np.linalg.eigvalsh(H))[::-1])


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        kernel.herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_full_rank_factor():
    u, v = random_complex(4, 1, seed=0), random_complex(3, 1, seed=1)
    F, G = kernel.full_rank_factor(u @ v.conj().T)
    assert F.shape == (4, 1) and G.shape == (1, 3)
    assert abs(abs(np.vdot(F[:, 0], u[:, 0])) - np.linalg.norm(F) * np.linalg.norm(u)) < 1e-10
    F, G = kernel.full_rank_factor(np.eye(3))
    assert np.allclose(F @ G, np.eye(3))
    A = random_rank(5, 4, 2, seed=4)
    F, G = kernel.full_rank_factor(A)
    assert kernel.rank(F) == kernel.rank(G) == 2
    assert np.abs(F @ G - A).max() < 1e-12
    # the factor-based pseudoinverse formula
    Fh, Gh = F.conj().T, G.conj().T
    X = Gh @ np.linalg.inv(G @ Gh) @ np.linalg.inv(Fh @ F) @ Fh
    assert np.abs(X - kernel.pinv(A)).max() < 1e-9
