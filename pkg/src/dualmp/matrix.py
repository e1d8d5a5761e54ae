"""Dual complex matrices A_s + A_d ε and their structural operations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernel
from .errors import InvalidRank, ShapeMismatch
from .scalar import DualComplex

MATRIX_TOL = 1e-10
# standard singular values <= RANK_RTOL * max(1, s_max) count as zero
RANK_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class DualMatrix:
    std: np.ndarray
    dual: np.ndarray

    def __post_init__(self):
        s = kernel.as_complex(self.std)
        d = kernel.as_complex(self.dual) if self.dual is not None else np.zeros_like(s)
        if s.shape != d.shape:
            raise ShapeMismatch(f"standard part {s.shape} vs dual part {d.shape}")
        s.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "std", s)
        object.__setattr__(self, "dual", d)

    @classmethod
    def real(cls, A) -> "DualMatrix":
        A = kernel.as_complex(A)
        return cls(A, np.zeros_like(A))

    @classmethod
    def eps(cls, A) -> "DualMatrix":
        """The purely infinitesimal matrix ``A ε``."""
        A = kernel.as_complex(A)
        return cls(np.zeros_like(A), A)

    @classmethod
    def identity(cls, n: int) -> "DualMatrix":
        return cls.real(np.eye(n))

    @classmethod
    def zeros(cls, m: int, n: int) -> "DualMatrix":
        return cls.real(np.zeros((m, n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.std.shape

    @property
    def H(self) -> "DualMatrix":
        return conj_transpose(self)

    def __getitem__(self, ij) -> DualComplex:
        return DualComplex(self.std[ij], self.dual[ij])

    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        _same_shape(self, other)
        return DualMatrix(self.std + other.std, self.dual + other.dual)

    def __sub__(self, other):
        _same_shape(self, other)
        return DualMatrix(self.std - other.std, self.dual - other.dual)

    def __neg__(self):
        return DualMatrix(-self.std, -self.dual)

    def scale(self, c: DualComplex | complex) -> "DualMatrix":
        if not isinstance(c, DualComplex):
            c = DualComplex(c, 0)
        return DualMatrix(c.std * self.std, c.std * self.dual + c.dual * self.std)

    def max_abs(self) -> float:
        return float(max(np.abs(self.std).max(initial=0.0), np.abs(self.dual).max(initial=0.0)))

    def allclose(self, other: "DualMatrix", tol: float = MATRIX_TOL) -> bool:
        return self.shape == other.shape and (self - other).max_abs() <= tol

    def __repr__(self):
        return f"DualMatrix(std=\n{self.std},\ndual=\n{self.dual})"


def _same_shape(A: DualMatrix, B: DualMatrix):
    if A.shape != B.shape:
        raise ShapeMismatch(f"shapes {A.shape} and {B.shape} differ")


def matmul(A: DualMatrix, B: DualMatrix) -> DualMatrix:
    if A.shape[1] != B.shape[0]:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return DualMatrix(A.std @ B.std, A.std @ B.dual + A.dual @ B.std)


def mul(*factors: DualMatrix) -> DualMatrix:
    out = factors[0]
    for F in factors[1:]:
        out = matmul(out, F)
    return out


def conj_transpose(A: DualMatrix) -> DualMatrix:
    return DualMatrix(A.std.conj().T, A.dual.conj().T)


def _square(A: DualMatrix):
    if A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got {A.shape}")


def is_hermitian(A: DualMatrix, tol: float = MATRIX_TOL) -> bool:
    _square(A)
    return (A - A.H).max_abs() <= tol


def is_unitary(A: DualMatrix, tol: float = MATRIX_TOL) -> bool:
    _square(A)
    eye = DualMatrix.identity(A.shape[0])
    return (A.H @ A).allclose(eye, tol) and (A @ A.H).allclose(eye, tol)


def range_projectors(As: np.ndarray, rtol: float = RANK_RTOL):
    """Orthogonal projectors ``(A_s A_s^†, A_s^† A_s)`` onto range(A_s) and range(A_s^H)."""
    P = dual_pinv_std(As, rtol)
    return As @ P, P @ As


def dual_pinv_std(As: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Pseudoinverse of a standard part with the dual layer's rank threshold."""
    return kernel.pinv(As, rtol, atol=rtol)


@dataclass(frozen=True)
class EssentialSplit:
    essential: DualMatrix
    nonessential: DualMatrix

    @property
    def nonessential_norm(self) -> float:
        return self.nonessential.max_abs()


def essential_split(A: DualMatrix, rtol: float = RANK_RTOL) -> EssentialSplit:
    """Split A into the essential part and the infinitesimal corner ``(I-P) A_d (I-Q) ε``.

    ``rtol`` is the relative rank threshold used for the projectors.
    """
    m, n = A.shape
    P, Q = range_projectors(A.std, rtol)
    corner = (np.eye(m) - P) @ A.dual @ (np.eye(n) - Q)
    nonessential = DualMatrix.eps(corner)
    return EssentialSplit(A - nonessential, nonessential)


def essential(A: DualMatrix, rtol: float = RANK_RTOL) -> DualMatrix:
    return essential_split(A, rtol).essential


# ---- random generators (explicit seeds, no shared RNG state) ----


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _gauss(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def random_unitary(n: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    Q, R = np.linalg.qr(_gauss(rng, n, n))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_skew_hermitian(n: int, seed=None) -> np.ndarray:
    G = _gauss(_rng(seed), n, n)
    return (G - G.conj().T) / 2


def random_complex(m: int, n: int, seed=None) -> np.ndarray:
    return _gauss(_rng(seed), m, n)


def random_rank(m: int, n: int, rank_s: int, seed=None, spread=(0.5, 2.0)) -> np.ndarray:
    """A complex m×n matrix of exact rank ``rank_s`` with singular values drawn from ``spread``."""
    if not 0 <= rank_s <= min(m, n):
        raise InvalidRank(f"rank {rank_s} impossible for a {m}x{n} matrix")
    rng = _rng(seed)
    U = random_unitary(m, rng)[:, :rank_s]
    V = random_unitary(n, rng)[:, :rank_s]
    s = np.sort(rng.uniform(*spread, size=rank_s))[::-1]
    return (U * s) @ V.conj().T


def random_dual(m: int, n: int, rank_s: int, seed=None) -> DualMatrix:
    """Random dual matrix whose standard part has exact rank ``rank_s`` and whose dual part is generic."""
    rng = _rng(seed)
    As = random_rank(m, n, rank_s, rng)
    return DualMatrix(As, random_complex(m, n, rng))


def random_dual_unitary(n: int, seed=None) -> DualMatrix:
    """(I + εS) U_s with S skew-Hermitian: exactly unitary in the dual ring."""
    rng = _rng(seed)
    Us = random_unitary(n, rng)
    S = random_skew_hermitian(n, rng)
    return DualMatrix(Us, S @ Us)


def random_columns_orthonormal(m: int, q: int, seed=None) -> DualMatrix:
    if not 0 <= q <= m:
        raise InvalidRank(f"cannot take {q} columns of an {m}x{m} unitary")
    U = random_dual_unitary(m, seed)
    return DualMatrix(U.std[:, :q], U.dual[:, :q])


def random_essential(m: int, n: int, rank_s: int, seed=None) -> DualMatrix:
    """Random dual matrix with vanishing nonessential part: A_d = A_s W + Z A_s."""
    rng = _rng(seed)
    As = random_rank(m, n, rank_s, rng)
    Ad = As @ random_complex(n, n, rng) + random_complex(m, m, rng) @ As
    return DualMatrix(As, Ad)
