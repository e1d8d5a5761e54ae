"""Dual generalized inverses and the Penrose-equation verifier.

The NDMPI ``Â^N`` is the unique X̂ with

    (1) Â X̂ Â = Â_e      (2) X̂ Â X̂ = X̂
    (3) (Â X̂)^* = Â X̂     (4) (X̂ Â)^* = X̂ Â

where Â_e is the essential part. ``ndmpi`` builds it from the dual SVD;
``ndmpi_closed_form`` is an SVD-free expression used as a second route.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .dsvd import dual_svd
from .errors import (
    DoesNotExist,
    InternalExistenceFailure,
    NotInvertible,
    OracleMismatch,
    ShapeMismatch,
)
from .matrix import RANK_RTOL, DualMatrix, dual_pinv_std, essential_split, mul

PENROSE_TOL = 1e-9


class InverseKind(str, enum.Enum):
    NDMPI = "ndmpi"
    MPDGI = "mpdgi"
    DMPGI = "dmpgi"
    WEAKLY_DUAL_MP = "wdmpgi"


@dataclass(frozen=True)
class InnerSet:
    """Label for Â{i,j,k,l}: the solutions of a subset of equations (1)-(4)."""

    equations: frozenset[int]

    def __post_init__(self):
        eqs = frozenset(self.equations)
        if not eqs or not eqs <= {1, 2, 3, 4}:
            raise ValueError(f"equation set must be a nonempty subset of {{1,2,3,4}}: {set(eqs)}")
        object.__setattr__(self, "equations", eqs)

    def __str__(self):
        return "{" + ",".join(map(str, sorted(self.equations))) + "}"


def residual(L: DualMatrix, R: DualMatrix) -> float:
    """Max entrywise |L - R| over both parts, divided by 1 + the larger magnitude."""
    if L.shape != R.shape:
        raise ShapeMismatch(f"cannot compare {L.shape} with {R.shape}")
    if L.std.size == 0:
        return 0.0
    return (L - R).max_abs() / (1.0 + max(L.max_abs(), R.max_abs()))


def ndmpi(A: DualMatrix, rtol: float = RANK_RTOL) -> DualMatrix:
    dec = dual_svd(A, rtol)
    m, n = A.shape
    r = dec.r
    inv = np.zeros((n, m), complex)
    inv_d = np.zeros((n, m), complex)
    for k in range(r):
        mu = dec.sigma[k]
        inv[k, k] = 1 / mu.std
        inv_d[k, k] = -mu.dual / mu.std**2
    return mul(dec.V, DualMatrix(inv, inv_d), dec.U.H)


def _closed_form(A: DualMatrix, rtol: float) -> DualMatrix:
    m, n = A.shape
    S = dual_pinv_std(A.std, rtol)
    P = A.std @ S
    Q = S @ A.std
    Ad_h = A.dual.conj().T
    dual = (
        -S @ A.dual @ S
        + (S @ S.conj().T) @ Ad_h @ (np.eye(m) - P)
        + (np.eye(n) - Q) @ Ad_h @ (S.conj().T @ S)
    )
    return DualMatrix(S, dual)


def ndmpi_closed_form(A: DualMatrix, rtol: float = RANK_RTOL, tol: float = PENROSE_TOL) -> DualMatrix:
    """SVD-free NDMPI::

        A_s^† + ε(-A_s^† A_d A_s^† + (A_s^* A_s)^† A_d^* (I - A_s A_s^†)
                  + (I - A_s^† A_s) A_d^* (A_s A_s^*)^†)

    The candidate is checked against the four equations before it is returned.
    """
    X = _closed_form(A, rtol)
    report = penrose_check(A, X, tol=tol, rtol=rtol)
    if not report.all_pass:
        raise OracleMismatch(f"closed-form candidate fails the Penrose equations: {report}")
    return X


def mpdgi(A: DualMatrix, rtol: float = RANK_RTOL) -> DualMatrix:
    """A_s^† - A_s^† A_d A_s^† ε. Always defined, not necessarily a Penrose inverse."""
    S = dual_pinv_std(A.std, rtol)
    return DualMatrix(S, -S @ A.dual @ S)


def nonessential_gate(A: DualMatrix, tol: float = PENROSE_TOL, rtol: float = RANK_RTOL):
    """Return ``(holds, norm)`` for the test ``max|Â_n| <= tol``."""
    norm = essential_split(A, rtol).nonessential_norm
    return norm <= tol, norm


def dmpgi(A: DualMatrix, tol: float = PENROSE_TOL, rtol: float = RANK_RTOL) -> DualMatrix:
    """Dual Moore-Penrose generalized inverse; exists iff the nonessential part vanishes."""
    ok, norm = nonessential_gate(A, tol, rtol)
    if not ok:
        raise DoesNotExist(f"DMPGI does not exist: nonessential part has norm {norm:.3e}", norm)
    return ndmpi(A, rtol)


def wdmpgi(A: DualMatrix, tol: float = PENROSE_TOL, rtol: float = RANK_RTOL) -> DualMatrix:
    """Weakly dual MP inverse (Â^*Â)^† Â^*, with the DMPGI of Â^*Â."""
    G = A.H @ A
    try:
        inner = dmpgi(G, tol * (1 + G.max_abs()), rtol)
    except DoesNotExist as exc:
        raise InternalExistenceFailure(
            f"DMPGI of A*A reported missing (norm {exc.nonessential_norm:.3e})"
        ) from exc
    return inner @ A.H


def wdmpgi_right(A: DualMatrix, tol: float = PENROSE_TOL, rtol: float = RANK_RTOL) -> DualMatrix:
    """The other route Â^*(ÂÂ^*)^†."""
    G = A @ A.H
    try:
        inner = dmpgi(G, tol * (1 + G.max_abs()), rtol)
    except DoesNotExist as exc:
        raise InternalExistenceFailure(
            f"DMPGI of AA* reported missing (norm {exc.nonessential_norm:.3e})"
        ) from exc
    return A.H @ inner


def ring_inverse(A: DualMatrix) -> DualMatrix:
    """A_s^{-1} - A_s^{-1} A_d A_s^{-1} ε for square A with invertible standard part."""
    m, n = A.shape
    if m != n:
        raise ShapeMismatch(f"ring inverse needs a square matrix, got {A.shape}")
    if kernel.rank(A.std, RANK_RTOL, atol=RANK_RTOL) < n:
        raise NotInvertible("standard part is singular")
    S = np.linalg.solve(A.std, np.eye(n))
    return DualMatrix(S, -S @ A.dual @ S)


@dataclass
class PenroseReport:
    residuals: dict[int, float]
    alt_residual: float
    tol: float
    passes: dict[int, bool] = field(init=False)
    alt_passes: bool = field(init=False)

    def __post_init__(self):
        self.passes = {k: v <= self.tol for k, v in self.residuals.items()}
        self.alt_passes = self.alt_residual <= self.tol

    @property
    def all_pass(self) -> bool:
        return all(self.passes.values())

    def as_dict(self) -> dict:
        return {
            "residuals": {f"eq{k}": v for k, v in self.residuals.items()},
            "passes": {f"eq{k}": v for k, v in self.passes.items()},
            "alt_eq1_residual": self.alt_residual,
            "alt_eq1_passes": self.alt_passes,
            "tol": self.tol,
        }


def penrose_check(
    A: DualMatrix, X: DualMatrix, which=(1, 2, 3, 4), tol: float = PENROSE_TOL, rtol: float = RANK_RTOL
) -> PenroseReport:
    """Residuals of the selected equations for candidate X̂.

    Equation (1) is measured against Â_e. The alternative first condition
    Â^*ÂX̂ÂÂ^* = Â^*ÂÂ^* is always reported alongside.
    """
    m, n = A.shape
    if X.shape != (n, m):
        raise ShapeMismatch(f"candidate has shape {X.shape}, expected {(n, m)}")
    AX = A @ X
    XA = X @ A
    res = {}
    for k in sorted(set(which)):
        if k == 1:
            res[1] = residual(AX @ A, essential_split(A, rtol).essential)
        elif k == 2:
            res[2] = residual(XA @ X, X)
        elif k == 3:
            res[3] = residual(AX.H, AX)
        elif k == 4:
            res[4] = residual(XA.H, XA)
        else:
            raise ValueError(f"no Penrose equation {k}")
    AhA = A.H @ A
    alt = residual(mul(AhA, X, A, A.H), AhA @ A.H)
    return PenroseReport(res, alt, tol)


@dataclass
class IdentityReport:
    residuals: dict[str, float]
    tol: float

    @property
    def passes(self) -> dict[str, bool]:
        return {k: v <= self.tol for k, v in self.residuals.items()}

    @property
    def all_pass(self) -> bool:
        return all(self.passes.values())

    @property
    def worst(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def as_dict(self) -> dict:
        return {"residuals": self.residuals, "passes": self.passes, "tol": self.tol}


def identity_suite(A: DualMatrix, tol: float = PENROSE_TOL, rtol: float = RANK_RTOL) -> IdentityReport:
    """The six NDMPI identities relating Â^N, Â_e and the Gram matrices."""
    AN = ndmpi(A, rtol)
    Ae = essential_split(A, rtol).essential
    Ah = A.H
    AhN = ndmpi(Ah, rtol)
    res = {
        "AN = (A*A)^N A*": residual(AN, ndmpi(Ah @ A, rtol) @ Ah),
        "AN = A* (AA*)^N": residual(AN, Ah @ ndmpi(A @ Ah, rtol)),
        "Ae* = A* A AN": residual(Ae.H, mul(Ah, A, AN)),
        "Ae* = AN A A*": residual(Ae.H, mul(AN, A, Ah)),
        "Ae = (A*)^N A* A": residual(Ae, mul(AhN, Ah, A)),
        "Ae = A A* (A*)^N": residual(Ae, mul(A, Ah, AhN)),
    }
    return IdentityReport(res, tol)


def lemma_suite(
    A: DualMatrix, B: DualMatrix | None = None, tol: float = PENROSE_TOL, rtol: float = RANK_RTOL
) -> IdentityReport:
    """Essential-part identities for Â^N; with an invertible square B̂ also the product pair."""
    AN = ndmpi(A, rtol)
    Ae = essential_split(A, rtol).essential
    Ah = A.H
    res = {
        "A*A = Ae*A": residual(Ah @ A, Ae.H @ A),
        "A*A = A*Ae": residual(Ah @ A, Ah @ Ae),
        "AA* = AeA*": residual(A @ Ah, Ae @ Ah),
        "AA* = AAe*": residual(A @ Ah, A @ Ae.H),
        "AN A = AN Ae": residual(AN @ A, AN @ Ae),
        "Ae AN = A AN": residual(Ae @ AN, A @ AN),
    }
    if B is not None:
        ABe = essential_split(A @ B, rtol).essential
        res["A*AB = A*(AB)e"] = residual(mul(Ah, A, B), Ah @ ABe)
        res["Ae B = A AN (AB)e"] = residual(Ae @ B, mul(A, AN, ABe))
    return IdentityReport(res, tol)
