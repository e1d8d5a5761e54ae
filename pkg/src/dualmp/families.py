"""Seeded generators of matrix pairs for the order-law batteries.

Each family returns ``(A, B)`` from an integer seed. Structured families are
built so that particular premises hold by construction; ``uniform`` mixes
shapes and standard-part ranks freely.
"""

from __future__ import annotations

import numpy as np

from .matrix import (
    DualMatrix,
    random_columns_orthonormal,
    random_complex,
    random_dual,
    random_dual_unitary,
    random_essential,
    random_rank,
)


def _dims(rng, lo=1, hi=5):
    return [int(x) for x in rng.integers(lo, hi + 1, size=3)]


def orthonormal_left(seed, essential_right=False):
    """Â with Â^*Â = I; B̂ arbitrary (or with B̂_n = 0)."""
    rng = np.random.default_rng(seed)
    m, q, n = _dims(rng)
    m = max(m, q)
    A = random_columns_orthonormal(m, q, rng)
    r = int(rng.integers(0, min(q, n) + 1))
    B = random_essential(q, n, r, rng) if essential_right else random_dual(q, n, r, rng)
    return A, B


def unitary_pair(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    return random_dual_unitary(n, rng), random_dual_unitary(n, rng)


def unitary_left(seed):
    """Dual-unitary Â with a square B̂ whose nonessential part vanishes."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    r = int(rng.integers(0, n + 1))
    return random_dual_unitary(n, rng), random_essential(n, n, r, rng)


def diagonal_pair(seed):
    """Commuting diagonal dual matrices; some standard entries are zero."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))

    def diag():
        s = rng.uniform(0.5, 2.0, n) * rng.choice([-1, 1], n) * (rng.random(n) < 0.7)
        d = rng.standard_normal(n) * (rng.random(n) < 0.8)
        return DualMatrix(np.diag(s), np.diag(d))

    return diag(), diag()


def commuting_hermitian(seed):
    """Real-part-only Hermitian matrices sharing an eigenbasis."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    U = random_dual_unitary(n, rng).std
    a = rng.uniform(0.5, 2.0, n) * (rng.random(n) < 0.7)
    b = rng.uniform(0.5, 2.0, n) * (rng.random(n) < 0.7)
    A = (U * a) @ U.conj().T
    B = (U * b) @ U.conj().T
    return DualMatrix.real(A), DualMatrix.real(B)


def essential_right(seed):
    """Arbitrary Â, B̂ with B̂_n = 0."""
    rng = np.random.default_rng(seed)
    m, q, n = _dims(rng)
    A = random_dual(m, q, int(rng.integers(0, min(m, q) + 1)), rng)
    B = random_essential(q, n, int(rng.integers(0, min(q, n) + 1)), rng)
    return A, B


def identity_pair(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    B = random_dual(n, n, int(rng.integers(0, n + 1)), rng)
    if seed % 2:
        return DualMatrix.identity(n), B
    return B, DualMatrix.identity(n)


def infinitesimal_product(seed):
    """Products whose standard part vanishes, so (ÂB̂)_n is typically nonzero."""
    rng = np.random.default_rng(seed)
    m, q, n = _dims(rng)
    q = max(q, 2)
    k = int(rng.integers(1, q))
    U = random_dual_unitary(q, rng).std
    As = random_complex(m, k, rng) @ U[:, :k].conj().T
    Bs = U[:, k:] @ random_complex(q - k, n, rng)
    return (
        DualMatrix(As, random_complex(m, q, rng)),
        DualMatrix(Bs, random_complex(q, n, rng)),
    )


def uniform(seed):
    rng = np.random.default_rng(seed)
    m, q, n = _dims(rng)
    A = random_dual(m, q, int(rng.integers(0, min(m, q) + 1)), rng)
    B = random_dual(q, n, int(rng.integers(0, min(q, n) + 1)), rng)
    return A, B


def uniform_square(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    A = random_dual(n, n, int(rng.integers(0, n + 1)), rng)
    B = random_dual(n, n, int(rng.integers(0, n + 1)), rng)
    return A, B


def invertible_left(seed):
    """Â with invertible standard part (not unitary), B̂ square random."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    A = random_dual(n, n, n, rng)
    B = random_dual(n, n, int(rng.integers(0, n + 1)), rng)
    return A, B


def unitary_left_any(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    return random_dual_unitary(n, rng), random_dual(n, n, int(rng.integers(0, n + 1)), rng)


def scalar_left(seed):
    """Â = αI with α an appreciable dual complex scalar, B̂_n = 0.

    Every premise of the invertible-factor law holds for these pairs.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    a = complex(*rng.uniform(0.5, 2.0, 2)) * rng.choice([-1, 1])
    d = complex(*rng.standard_normal(2))
    A = DualMatrix(a * np.eye(n), d * np.eye(n))
    return A, random_essential(n, n, int(rng.integers(0, n + 1)), rng)


FAMILIES = {
    "orthonormal-left": orthonormal_left,
    "orthonormal-left/essential-right": lambda s: orthonormal_left(s, essential_right=True),
    "unitary-pair": unitary_pair,
    "unitary-left/essential-right": unitary_left,
    "unitary-left": unitary_left_any,
    "diagonal": diagonal_pair,
    "commuting-hermitian": commuting_hermitian,
    "essential-right": essential_right,
    "identity": identity_pair,
    "infinitesimal-product": infinitesimal_product,
    "uniform": uniform,
    "uniform-square": uniform_square,
    "invertible-left": invertible_left,
    "scalar-left/essential-right": scalar_left,
}

# families usable with every checker vs. those restricted to square pairs
RECTANGULAR = [
    "orthonormal-left",
    "orthonormal-left/essential-right",
    "essential-right",
    "infinitesimal-product",
    "uniform",
]
SQUARE = [
    "unitary-pair",
    "unitary-left/essential-right",
    "unitary-left",
    "diagonal",
    "commuting-hermitian",
    "identity",
    "uniform-square",
    "invertible-left",
]
INVERTIBLE_LEFT = [
    "unitary-pair",
    "unitary-left/essential-right",
    "unitary-left",
    "invertible-left",
    "scalar-left/essential-right",
]

__all__ = ["FAMILIES", "RECTANGULAR", "SQUARE", "INVERTIBLE_LEFT", "random_rank"]
