"""Minimum-norm least-squares solutions of dual linear systems, and dual rank decompositions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernel
from .errors import NotDecomposable, ShapeMismatch
from .inverse import PENROSE_TOL, ndmpi
from .matrix import RANK_RTOL, DualMatrix, dual_pinv_std
from .scalar import DualReal


def dual_norm(u: DualMatrix) -> DualReal:
    """Euclidean norm of a dual vector (or Frobenius norm of a matrix), to first order in ε.

    ‖u_s‖ + ε Re⟨u_s, u_d⟩/‖u_s‖ when u_s ≠ 0, otherwise ε‖u_d‖.
    """
    s = np.linalg.norm(u.std)
    if s == 0:
        return DualReal(0.0, float(np.linalg.norm(u.dual)))
    return DualReal(float(s), float(np.vdot(u.std, u.dual).real / s))


@dataclass(frozen=True, eq=False)
class DualSolveResult:
    solution: DualMatrix
    residual_norm: DualReal
    rank_used: int


def solve_min_norm(A: DualMatrix, b: DualMatrix, rtol: float = RANK_RTOL) -> DualSolveResult:
    """x̂ = Â^N b̂ for the system Â x̂ ≈ b̂ (b̂ is m×1, or m×k for several right-hand sides)."""
    if b.shape[0] != A.shape[0]:
        raise ShapeMismatch(f"right-hand side has {b.shape[0]} rows, matrix has {A.shape[0]}")
    X = ndmpi(A, rtol)
    x = X @ b
    return DualSolveResult(x, dual_norm(A @ x - b), kernel.rank(A.std, rtol, atol=rtol))


@dataclass(frozen=True, eq=False)
class RankDecomposition:
    left: DualMatrix
    right: DualMatrix

    @property
    def rank(self) -> int:
        return self.left.shape[1]

    def product(self) -> DualMatrix:
        return self.left @ self.right


def dual_rank_decomposition(A: DualMatrix, tol: float = PENROSE_TOL, rtol: float = RANK_RTOL) -> RankDecomposition:
    """Â = Â₁Â₂ with full-column-rank standard part of Â₁ and full-row-rank Â₂.

    The standard parts come from a full-rank factorization F G of A_s; the dual
    parts are the least-squares solution G_d = F^† A_d,
    F_d = (A_d - F G_d) G^*(G G^*)^{-1}. The decomposition exists exactly when
    the reconstruction residual vanishes.
    """
    F, G = kernel.full_rank_factor(A.std, rtol, atol=rtol)
    Gd = dual_pinv_std(F, rtol) @ A.dual
    r = F.shape[1]
    if r:
        Fd = (A.dual - F @ Gd) @ G.conj().T @ np.linalg.inv(G @ G.conj().T)
    else:
        Fd = np.zeros((A.shape[0], 0), complex)
    left, right = DualMatrix(F, Fd), DualMatrix(G, Gd)
    miss = (left @ right - A).max_abs()
    if miss > tol:
        raise NotDecomposable(f"no dual rank decomposition: reconstruction misses by {miss:.3e}", miss)
    return RankDecomposition(left, right)
