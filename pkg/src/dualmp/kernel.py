"""Complex-matrix primitives the dual layer is built on.

Matrices are plain 2-D ``complex128`` numpy arrays. The SVD is one-sided
(Hestenes) Jacobi with a round-robin pair schedule so that every round of
disjoint column pairs is rotated in one vectorized step; the Hermitian
eigensolver is cyclic two-sided Jacobi. Both target small dense matrices.
"""

from __future__ import annotations

import numpy as np

from .errors import NoConvergence, NotHermitian

EPS = np.finfo(float).eps
MAX_SWEEPS = 60


def as_complex(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {A.shape}")
    return A


def _round_robin(k: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # circle method: k-1 rounds (k even) covering every pair exactly once
    idx = list(range(k)) + ([-1] if k % 2 else [])
    n = len(idx)
    rounds = []
    for _ in range(n - 1):
        p, q = [], []
        for i in range(n // 2):
            a, b = idx[i], idx[n - 1 - i]
            if a >= 0 and b >= 0:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        idx = [idx[0], idx[-1]] + idx[1:-1]
    return rounds


def _jacobi_columns(W: np.ndarray, max_sweeps: int):
    """Orthogonalize the columns of ``W`` in place; return the accumulated V."""
    k = W.shape[1]
    V = np.eye(k, dtype=complex)
    if k < 2:
        return V
    rounds = _round_robin(k)
    for _ in range(max_sweeps):
        rotated = False
        for p, q in rounds:
            wp, wq = W[:, p], W[:, q]
            alpha = np.einsum("ij,ij->j", wp.conj(), wp).real
            beta = np.einsum("ij,ij->j", wq.conj(), wq).real
            gamma = np.einsum("ij,ij->j", wp.conj(), wq)
            g = np.abs(gamma)
            active = g > EPS * np.sqrt(alpha * beta)
            if not active.any():
                continue
            rotated = True
            p, q, alpha, beta, gamma, g = (
                x[active] for x in (p, q, alpha, beta, gamma, g)
            )
            zeta = (beta - alpha) / (2 * g)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(1.0, zeta))
            c = 1 / np.hypot(1.0, t)
            s = c * t
            ph = np.conj(gamma / g)
            for M in (W, V):
                mp, mq = M[:, p].copy(), M[:, q]
                M[:, p] = c * mp - s * ph * mq
                M[:, q] = s * mp + c * ph * mq
        if not rotated:
            return V
    raise NoConvergence(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")


def _complete_basis(Q: np.ndarray, m: int) -> np.ndarray:
    """Extend the orthonormal columns of ``Q`` (m×k) to an m×m unitary."""
    B = Q.copy()
    while B.shape[1] < m:
        # project every unit vector off span(B); keep the largest remainder
        R = np.eye(m, dtype=complex)
        for _ in range(2):
            R -= B @ (B.conj().T @ R)
        norms = np.linalg.norm(R, axis=0)
        j = int(np.argmax(norms))
        B = np.column_stack([B, R[:, j] / norms[j]])
    return B


def svd(A, max_sweeps: int = MAX_SWEEPS):
    """Full SVD ``A = U @ diag(s) @ V^H``.

    Returns ``(U, s, V)`` with U m×m, V n×n unitary and ``s`` of length
    ``min(m, n)`` sorted nonincreasing. Note V is returned, not V^H.
    """
    A = as_complex(A)
    m, n = A.shape
    if m < n:
        V, s, U = svd(A.conj().T, max_sweeps)
        return U, s, V
    W = A.copy()
    V = _jacobi_columns(W, max_sweeps)
    s = np.linalg.norm(W, axis=0)
    order = np.argsort(-s, kind="stable")
    s, W, V = s[order], W[:, order], V[:, order]
    cutoff = max(m, n) * EPS * (s[0] if n else 0.0)
    keep = s > cutoff
    U = _complete_basis(W[:, keep] / s[keep], m)
    return U, s, V


def singular_values(A) -> np.ndarray:
    return svd(A)[1]


def default_rtol(shape) -> float:
    return max(shape) * EPS


def count_above(s: np.ndarray, tol: float, atol: float = 0.0) -> int:
    """Number of singular values above ``max(tol * s_max, atol)``; never counts zeros."""
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > max(tol * s[0], atol)))


def rank(A, tol: float | None = None, atol: float = 0.0) -> int:
    """Numerical rank: singular values above ``tol * s_max`` (and above ``atol``)."""
    A = as_complex(A)
    if A.size == 0:
        return 0
    if tol is None:
        tol = default_rtol(A.shape)
    return count_above(singular_values(A), tol, atol)


def pinv(A, tol: float | None = None, atol: float = 0.0) -> np.ndarray:
    A = as_complex(A)
    m, n = A.shape
    if A.size == 0:
        return np.zeros((n, m), dtype=complex)
    U, s, V = svd(A)
    if tol is None:
        tol = default_rtol(A.shape)
    r = count_above(s, tol, atol)
    return (V[:, :r] / s[:r]) @ U[:, :r].conj().T


def full_rank_factor(A, tol: float | None = None, atol: float = 0.0):
    """Factor ``A = F @ G`` with F m×r of full column rank and G r×n of full row rank."""
    A = as_complex(A)
    m, n = A.shape
    if A.size == 0:
        return np.zeros((m, 0), complex), np.zeros((0, n), complex)
    U, s, V = svd(A)
    if tol is None:
        tol = default_rtol(A.shape)
    r = count_above(s, tol, atol)
    root = np.sqrt(s[:r])
    return U[:, :r] * root, root[:, None] * V[:, :r].conj().T


def herm_eig(H, tol: float = 1e-10, max_sweeps: int = MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi.

    Returns ``(w, Q)`` with ``w`` sorted nonincreasing and ``H = Q diag(w) Q^H``.
    """
    H = as_complex(H)
    n = H.shape[0]
    if H.shape != (n, n):
        raise NotHermitian(f"matrix of shape {H.shape} is not square")
    scale = max(1.0, float(np.abs(H).max(initial=0.0)))
    if np.abs(H - H.conj().T).max(initial=0.0) > tol * scale:
        raise NotHermitian("matrix differs from its conjugate transpose")
    H = (H + H.conj().T) / 2
    Q = np.eye(n, dtype=complex)
    target = n * EPS * float(np.linalg.norm(H))
    for _ in range(max_sweeps):
        off = np.linalg.norm(H - np.diag(np.diag(H)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = H[p, q]
                g = abs(h)
                if g == 0:
                    continue
                a, b = H[p, p].real, H[q, q].real
                theta = (b - a) / (2 * g)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(1.0, theta))
                c = 1 / np.hypot(1.0, t)
                s = t * c
                ph = np.conj(h / g)
                J = np.array([[c, s], [-s * ph, c * ph]])
                idx = [p, q]
                H[:, idx] = H[:, idx] @ J
                H[idx, :] = J.conj().T @ H[idx, :]
                Q[:, idx] = Q[:, idx] @ J
                H[p, q] = H[q, p] = 0
    else:
        raise NoConvergence(f"Hermitian Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(H).real
    order = np.argsort(-w, kind="stable")
    return w[order], Q[:, order]
