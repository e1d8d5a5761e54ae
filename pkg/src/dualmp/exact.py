"""Exact arithmetic over Gaussian rationals, used as ground truth for small inputs.

Matrices are numpy object arrays of ``GaussQ``; numpy's ``@`` works on them
unchanged. Pseudoinverses come from a full-rank factorization read off the
reduced row echelon form, so every result is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import CandidateRejected, ShapeMismatch
from .matrix import DualMatrix


class GaussQ:
    """p + qi with p, q rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussQ):
            re, im = re.re, re.im + im
        elif isinstance(re, complex):
            re, im = Fraction(re.real), Fraction(re.imag) + im
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (Rational, complex, float)):
            return GaussQ(x)
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        o = self._lift(o)
        return o if o is NotImplemented else o - self

    def __mul__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __truediv__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return GaussQ((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def __eq__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def qmat(rows) -> np.ndarray:
    """Object array of GaussQ from nested lists of ints, Fractions, complex or GaussQ."""
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        arr = arr.reshape(len(rows), -1)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = GaussQ(v)
    return out


def qzeros(m, n) -> np.ndarray:
    return qmat([[0] * n for _ in range(m)]) if m and n else np.empty((m, n), dtype=object)


def qeye(n) -> np.ndarray:
    Z = qzeros(n, n)
    for i in range(n):
        Z[i, i] = GaussQ(1)
    return Z


def qH(A: np.ndarray) -> np.ndarray:
    out = np.empty((A.shape[1], A.shape[0]), dtype=object)
    for (i, j), v in np.ndenumerate(A):
        out[j, i] = v.conjugate()
    return out


def qmatmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    m, n = A.shape[0], B.shape[1]
    if A.shape[1] == 0:
        return qzeros(m, n)
    return A @ B if m and n else np.empty((m, n), dtype=object)


def is_zero(A: np.ndarray) -> bool:
    return not any(bool(v) for v in A.flat)


def rref(A: np.ndarray):
    """Reduced row echelon form and pivot columns."""
    R = A.copy()
    m, n = R.shape
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if R[i, col]), None)
        if piv is None:
            continue
        R[[row, piv]] = R[[piv, row]]
        R[row] = R[row] / R[row, col]
        for i in range(m):
            if i != row and R[i, col]:
                R[i] = R[i] - R[i, col] * R[row]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return R, pivots


def qinv(A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    R, piv = rref(np.hstack([A, qeye(n)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def exact_rank(A: np.ndarray) -> int:
    return len(rref(A)[1])


def exact_pinv(A: np.ndarray) -> np.ndarray:
    """A^† = G^*(GG^*)^{-1}(F^*F)^{-1}F^* with A = FG from the row echelon form."""
    m, n = A.shape
    R, piv = rref(A)
    r = len(piv)
    if r == 0:
        return qzeros(n, m)
    F = A[:, piv]
    G = R[:r]
    Gh, Fh = qH(G), qH(F)
    return qmatmul(qmatmul(Gh, qinv(qmatmul(G, Gh))), qmatmul(qinv(qmatmul(Fh, F)), Fh))


@dataclass(frozen=True, eq=False)
class RationalDualMatrix:
    std: np.ndarray
    dual: np.ndarray

    def __post_init__(self):
        s = qmat(self.std) if not _is_q(self.std) else self.std
        d = qmat(self.dual) if not _is_q(self.dual) else self.dual
        if s.shape != d.shape:
            raise ShapeMismatch(f"standard part {s.shape} vs dual part {d.shape}")
        object.__setattr__(self, "std", s)
        object.__setattr__(self, "dual", d)

    @property
    def shape(self):
        return self.std.shape

    @property
    def H(self) -> "RationalDualMatrix":
        return RationalDualMatrix(qH(self.std), qH(self.dual))

    def __matmul__(self, o: "RationalDualMatrix") -> "RationalDualMatrix":
        return RationalDualMatrix(
            qmatmul(self.std, o.std), qmatmul(self.std, o.dual) + qmatmul(self.dual, o.std)
        )

    def __add__(self, o):
        return RationalDualMatrix(self.std + o.std, self.dual + o.dual)

    def __sub__(self, o):
        return RationalDualMatrix(self.std - o.std, self.dual - o.dual)

    def __eq__(self, o):
        return (
            isinstance(o, RationalDualMatrix)
            and self.shape == o.shape
            and is_zero(self.std - o.std)
            and is_zero(self.dual - o.dual)
        )

    __hash__ = None

    def to_float(self) -> DualMatrix:
        f = np.vectorize(complex, otypes=[complex])
        if self.std.size == 0:
            return DualMatrix(np.zeros(self.shape, complex), np.zeros(self.shape, complex))
        return DualMatrix(f(self.std), f(self.dual))

    @classmethod
    def from_float(cls, A: DualMatrix) -> "RationalDualMatrix":
        """Exact binary value of every float entry (no rounding)."""
        return cls(qmat(A.std.tolist()), qmat(A.dual.tolist()))


def _is_q(a):
    return isinstance(a, np.ndarray) and a.dtype == object and all(isinstance(v, GaussQ) for v in a.flat)


def exact_essential_split(A: RationalDualMatrix):
    m, n = A.shape
    S = exact_pinv(A.std)
    P, Q = qmatmul(A.std, S), qmatmul(S, A.std)
    corner = qmatmul(qmatmul(qeye(m) - P, A.dual), qeye(n) - Q)
    Nn = RationalDualMatrix(qzeros(m, n), corner)
    return A - Nn, Nn


def exact_penrose(A: RationalDualMatrix, X: RationalDualMatrix) -> dict:
    """Exact truth values of equations (1)-(4) and of Â^*ÂX̂ÂÂ^* = Â^*ÂÂ^*."""
    Ae, _ = exact_essential_split(A)
    AX, XA = A @ X, X @ A
    AhA = A.H @ A
    return {
        1: AX @ A == Ae,
        2: XA @ X == X,
        3: AX.H == AX,
        4: XA.H == XA,
        "alt": AhA @ X @ A @ A.H == AhA @ A.H,
    }


def _candidate(A: RationalDualMatrix) -> RationalDualMatrix:
    m, n = A.shape
    S = exact_pinv(A.std)
    Sh = qH(S)
    P, Q = qmatmul(A.std, S), qmatmul(S, A.std)
    Adh = qH(A.dual)
    dual = (
        -qmatmul(qmatmul(S, A.dual), S)
        + qmatmul(qmatmul(qmatmul(S, Sh), Adh), qeye(m) - P)
        + qmatmul(qmatmul(qeye(n) - Q, Adh), qmatmul(Sh, S))
    )
    return RationalDualMatrix(S, dual)


def exact_ndmpi(A: RationalDualMatrix) -> RationalDualMatrix:
    """NDMPI in exact arithmetic; the candidate must satisfy all four equations exactly."""
    X = _candidate(A)
    checks = exact_penrose(A, X)
    failed = [k for k in (1, 2, 3, 4) if not checks[k]]
    if failed:
        raise CandidateRejected(f"exact candidate fails equations {failed}")
    return X


def exact_mpdgi(A: RationalDualMatrix) -> RationalDualMatrix:
    S = exact_pinv(A.std)
    return RationalDualMatrix(S, -qmatmul(qmatmul(S, A.dual), S))


def random_gaussian_rational(m, n, rank_s, seed=None, den=4, span=3) -> RationalDualMatrix:
    """Small random Gaussian-rational dual matrix whose standard part has rank ``rank_s``."""
    rng = np.random.default_rng(seed)

    def entries(a, b):
        re = rng.integers(-span * den, span * den + 1, size=(a, b))
        im = rng.integers(-span * den, span * den + 1, size=(a, b))
        return qmat([[GaussQ(Fraction(int(re[i, j]), den), Fraction(int(im[i, j]), den)) for j in range(b)] for i in range(a)])

    while True:
        L = entries(m, rank_s) if rank_s else qzeros(m, 0)
        R = entries(rank_s, n) if rank_s else qzeros(0, n)
        As = qmatmul(L, R)
        if exact_rank(As) == rank_s:
            break
    return RationalDualMatrix(As, entries(m, n))
