"""Singular value decomposition of dual complex matrices.

Constructed by first-order perturbation of the SVD of the standard part.
With ``A_s = U Σ V^H`` and ``B = U^H A_d V`` we look for
``Û = U(I + εX)``, ``V̂ = V(I + εY)`` with X, Y skew-Hermitian such that
``B - XΣ + ΣY`` is diagonal. Off-diagonal entries between distinct
appreciable singular values give a 2×2 system per pair; entries that touch
the null block are solved directly; the null×null corner ``U_2^H A_d V_2`` is
diagonalized by an SVD and yields the infinitesimal singular values.
Clusters of (numerically) equal appreciable values are rotated by the
eigenvectors of the Hermitian part of their block of B first.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import kernel
from .matrix import RANK_RTOL, DualMatrix
from .scalar import DualReal

CLUSTER_RTOL = 1e-8


class DegenerateGapWarning(UserWarning):
    """Two standard singular values were merged although their gap is not negligible.

    Merging replaces a cluster's values by their mean, so the standard part of
    the reconstruction is off by up to half the gap (at most ``CLUSTER_RTOL / 2``
    relative). Below a tenth of the threshold that error is under 5e-10 and no
    warning is issued.
    """


@dataclass(frozen=True, eq=False)
class DualSVD:
    U: DualMatrix
    sigma: tuple[DualReal, ...]
    V: DualMatrix
    r: int
    t: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.U.shape[0], self.V.shape[0]

    def sigma_matrix(self, part: str = "all") -> DualMatrix:
        """Σ̂ as an m×n dual matrix; ``part`` is ``all``, ``appreciable`` or ``infinitesimal``."""
        m, n = self.shape
        S = np.zeros((m, n), complex)
        D = np.zeros((m, n), complex)
        for k, mu in enumerate(self.sigma):
            if part == "appreciable" and k >= self.r:
                continue
            if part == "infinitesimal" and k < self.r:
                continue
            S[k, k], D[k, k] = mu.std, mu.dual
        return DualMatrix(S, D)

    def reconstruct(self) -> DualMatrix:
        return self.U @ self.sigma_matrix() @ self.V.H


def _clusters(s: np.ndarray, r: int, rtol: float):
    """Group indices 0..r-1 whose neighbouring values differ by less than ``rtol`` relatively."""
    groups, start = [], 0
    for k in range(1, r + 1):
        if k == r or s[k - 1] - s[k] >= rtol * s[k - 1]:
            groups.append((start, k))
            start = k
        elif s[k - 1] - s[k] >= 0.1 * rtol * s[k - 1]:
            warnings.warn(
                f"singular values {s[k - 1]:.17g} and {s[k]:.17g} merged near the cluster threshold",
                DegenerateGapWarning,
                stacklevel=3,
            )
    return groups


def dual_svd(A: DualMatrix, rtol: float = RANK_RTOL, cluster_rtol: float = CLUSTER_RTOL) -> DualSVD:
    """Dual SVD ``Â = Û Σ̂ V̂^*``.

    Standard singular values at most ``rtol * max(1, s_max)`` are treated as zero.
    Corner singular values of the dual part below the same relative threshold are
    reported as zero and excluded from ``t``.
    """
    m, n = A.shape
    k = min(m, n)
    U, s, V = kernel.svd(A.std)
    s = s.copy()
    smax = s[0] if k else 0.0
    r = kernel.count_above(s, rtol, atol=rtol)
    s[r:] = 0.0

    groups = _clusters(s, r, cluster_rtol)
    for a, b in groups:
        if b - a > 1:
            s[a:b] = s[a:b].mean()
            blk = U[:, a:b].conj().T @ A.dual @ V[:, a:b]
            _, Q = kernel.herm_eig((blk + blk.conj().T) / 2, tol=np.inf)
            U[:, a:b] = U[:, a:b] @ Q
            V[:, a:b] = V[:, a:b] @ Q

    corner_vals = np.zeros(0)
    if r < m and r < n:
        C = U[:, r:].conj().T @ A.dual @ V[:, r:]
        P, corner_vals, R = kernel.svd(C)
        U[:, r:] = U[:, r:] @ P
        V[:, r:] = V[:, r:] @ R

    B = U.conj().T @ A.dual @ V
    X = np.zeros((m, m), complex)
    Y = np.zeros((n, n), complex)
    dual_diag = np.zeros(r)

    sig = s[:r]
    for a, b in groups:
        blk = B[a:b, a:b]
        herm = (blk + blk.conj().T) / 2
        dual_diag[a:b] = np.diag(herm).real
        # gauge: the whole skew part goes to the left factor
        X[a:b, a:b] = (blk - blk.conj().T) / (2 * sig[a])
    for ga, (a, b) in enumerate(groups):
        for c, d in groups[ga + 1 :]:
            si = sig[a:b, None]
            sj = sig[None, c:d]
            bij = B[a:b, c:d]
            bji_conj = B[c:d, a:b].conj().T
            det = sj**2 - si**2
            # -sj x + si y = -bij ;  si x - sj y = -conj(bji)
            x = (sj * bij + si * bji_conj) / det
            y = (si * bij + sj * bji_conj) / det
            X[a:b, c:d] = x
            X[c:d, a:b] = -x.conj().T
            Y[a:b, c:d] = y
            Y[c:d, a:b] = -y.conj().T
    if r:
        Y[:r, r:] = -B[:r, r:] / sig[:, None]
        Y[r:, :r] = -Y[:r, r:].conj().T
        X[r:, :r] = B[r:, :r] / sig[None, :]
        X[:r, r:] = -X[r:, :r].conj().T

    U_hat = DualMatrix(U, U @ X)
    V_hat = DualMatrix(V, V @ Y)

    dscale = max(1.0, float(np.abs(A.dual).max(initial=0.0)), float(smax))
    infinitesimal = [float(v) for v in corner_vals if v > rtol * dscale]
    sigma = tuple(DualReal(float(sig[i]), float(dual_diag[i])) for i in range(r)) + tuple(
        DualReal(0.0, v) for v in infinitesimal
    )
    return DualSVD(U_hat, sigma, V_hat, r, r + len(infinitesimal))


def singular_values(A: DualMatrix, rtol: float = RANK_RTOL) -> list[DualReal]:
    """All min(m, n) dual singular values, nonincreasing under the total order."""
    dec = dual_svd(A, rtol)
    vals = sorted(dec.sigma, reverse=True)
    return vals + [DualReal(0.0, 0.0)] * (min(A.shape) - len(vals))
