"""Reverse/forward order-law checkers for the NDMPI.

Each checker evaluates the premises and the conclusion of one sufficient
condition on a concrete pair (Â, B̂) and returns a ``LawReport``. A theorem is
violated exactly when every premise holds and the conclusion does not, which
``implication_respected`` records.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernel
from .errors import DoesNotExist, NotAMember, NotInvertible, ShapeMismatch
from .inverse import PENROSE_TOL, dmpgi, ndmpi, penrose_check, residual, ring_inverse
from .matrix import RANK_RTOL, DualMatrix, essential_split, mul


@dataclass
class LawReport:
    law_id: str
    premise_names: list[str]
    premise_residuals: list[float]
    conclusion_name: str
    conclusion_residual: float
    tol: float
    applicable: bool = True
    notes: dict = field(default_factory=dict)

    @property
    def premises_hold(self) -> list[bool]:
        return [r <= self.tol for r in self.premise_residuals]

    @property
    def conclusion_holds(self) -> bool:
        return self.conclusion_residual <= self.tol

    @property
    def implication_respected(self) -> bool:
        return not all(self.premises_hold) or self.conclusion_holds

    def as_dict(self) -> dict:
        return {
            "law_id": self.law_id,
            "applicable": self.applicable,
            "premises": [
                {"name": n, "residual": r, "holds": h}
                for n, r, h in zip(self.premise_names, self.premise_residuals, self.premises_hold)
            ],
            "conclusion": {
                "name": self.conclusion_name,
                "residual": self.conclusion_residual,
                "holds": self.conclusion_holds,
            },
            "implication_respected": self.implication_respected,
            "tol": self.tol,
            **({"notes": self.notes} if self.notes else {}),
        }


class Pair:
    """Lazily computed inverses and essential parts shared by all checkers on one pair."""

    def __init__(self, A: DualMatrix, B: DualMatrix, rtol: float = RANK_RTOL):
        if A.shape[1] != B.shape[0]:
            raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
        self.A, self.B, self.rtol = A, B, rtol

    @cached_property
    def AB(self):
        return self.A @ self.B

    @cached_property
    def AN(self):
        return ndmpi(self.A, self.rtol)

    @cached_property
    def BN(self):
        return ndmpi(self.B, self.rtol)

    @cached_property
    def ABN(self):
        return ndmpi(self.AB, self.rtol)

    @cached_property
    def Ae(self):
        return essential_split(self.A, self.rtol).essential

    @cached_property
    def Be(self):
        return essential_split(self.B, self.rtol).essential

    @cached_property
    def AB_split(self):
        return essential_split(self.AB, self.rtol)

    @cached_property
    def BNAN(self):
        return self.BN @ self.AN


def _pair(A, B, ctx):
    return ctx if ctx is not None else Pair(A, B)


def _square_pair(A, B):
    if A.shape[0] != A.shape[1] or B.shape != A.shape:
        raise ShapeMismatch(f"expected two square matrices of equal size, got {A.shape} and {B.shape}")


def check_rol_essential(A, B, tol=PENROSE_TOL, ctx=None) -> LawReport:
    p = _pair(A, B, ctx)
    A, B, AN, BN = p.A, p.B, p.AN, p.BN
    return LawReport(
        "rol-essential",
        ["AN A B B* A* = B B* Ae*", "B BN A* A B = A* A Be"],
        [
            residual(mul(AN, A, B, B.H, A.H), mul(B, B.H, p.Ae.H)),
            residual(mul(B, BN, A.H, A, B), mul(A.H, A, p.Be)),
        ],
        "(AB)^N = BN AN",
        residual(p.ABN, p.BNAN),
        tol,
    )


def check_rol_plain(A, B, tol=PENROSE_TOL, ctx=None) -> LawReport:
    p = _pair(A, B, ctx)
    A, B, AN, BN = p.A, p.B, p.AN, p.BN
    return LawReport(
        "rol-plain",
        ["AN A B B* A* = B B* A*", "B BN A* A B = A* A B"],
        [
            residual(mul(AN, A, B, B.H, A.H), mul(B, B.H, A.H)),
            residual(mul(B, BN, A.H, A, B), mul(A.H, A, B)),
        ],
        "(AB)^N = BN AN",
        residual(p.ABN, p.BNAN),
        tol,
    )


def check_rol_single(A, B, tol=PENROSE_TOL, ctx=None) -> LawReport:
    p = _pair(A, B, ctx)
    A, B, AN, BN = p.A, p.B, p.AN, p.BN
    return LawReport(
        "rol-single",
        ["AN A B B* A* A B BN = B B* A* A"],
        [residual(mul(AN, A, B, B.H, A.H, A, B, BN), mul(B, B.H, A.H, A))],
        "(AB)^N = BN AN",
        residual(p.ABN, p.BNAN),
        tol,
    )


def check_rol_dmpgi_link(A, B, tol=PENROSE_TOL, ctx=None) -> LawReport:
    """Premises gated on (ÂB̂)_n = 0; conclusion (ÂB̂)^† = (ÂB̂)^N = B̂^N Â^N."""
    p = _pair(A, B, ctx)
    A, B, AN, BN, ABN = p.A, p.B, p.AN, p.BN, p.ABN
    gate = p.AB_split.nonessential_norm
    gate_res = gate / (1 + p.AB.max_abs())
    concl = residual(ABN, p.BNAN)
    applicable = True
    try:
        dag = dmpgi(p.AB, tol * (1 + p.AB.max_abs()), p.rtol)
        concl = max(concl, residual(dag, ABN))
    except DoesNotExist:
        applicable = False
    return LawReport(
        "rol-dmpgi",
        ["(AB)e = AB", "AN A Be = B (AB)^N A B", "B BN Ae* = A* A B (AB)^N"],
        [
            gate_res,
            residual(mul(AN, A, p.Be), mul(B, ABN, A, B)),
            residual(mul(B, BN, p.Ae.H), mul(A.H, A, B, ABN)),
        ],
        "(AB)^+ = (AB)^N = BN AN",
        concl,
        tol,
        applicable=applicable,
    )


def check_rol_commuting(A, B, tol=PENROSE_TOL, ctx=None) -> LawReport:
    p = _pair(A, B, ctx)
    A, B, AN, BN = p.A, p.B, p.AN, p.BN
    M = mul(A, B, BN, AN)
    K = mul(BN, AN, A, B)
    return LawReport(
        "rol-commuting",
        ["AN A B BN = B BN AN A", "A B BN AN Hermitian", "BN AN A B Hermitian"],
        [residual(mul(AN, A, B, BN), mul(B, BN, AN, A)), residual(M.H, M), residual(K.H, K)],
        "(AB)^N = BN AN",
        residual(p.ABN, p.BNAN),
        tol,
    )


def check_fol(A, B, tol=PENROSE_TOL, ctx=None) -> LawReport:
    _square_pair(A, B)
    p = _pair(A, B, ctx)
    A, B, AN, BN, ABN = p.A, p.B, p.AN, p.BN, p.ABN
    return LawReport(
        "fol",
        ["A* A (AB)^N B B* = A* B*", "B BN A B = A B", "AN A B* A* = B* A*"],
        [
            residual(mul(A.H, A, ABN, B, B.H), A.H @ B.H),
            residual(mul(B, BN, A, B), p.AB),
            residual(mul(AN, A, B.H, A.H), B.H @ A.H),
        ],
        "(AB)^N = AN BN",
        residual(ABN, AN @ BN),
        tol,
    )


def check_rol_invertible(A, B, tol=PENROSE_TOL, ctx=None) -> LawReport:
    _square_pair(A, B)
    if kernel.rank(A.std, RANK_RTOL, atol=RANK_RTOL) < A.shape[0]:
        raise NotInvertible("left factor has a singular standard part")
    p = _pair(A, B, ctx)
    A, B, BN, ABN = p.A, p.B, p.BN, p.ABN
    Ainv = ring_inverse(A)
    return LawReport(
        "rol-invertible",
        ["BN (AB) B* = A B*", "B BN A B = A B", "A B (AB)^N B = B"],
        [
            residual(mul(BN, p.AB, B.H), A @ B.H),
            residual(mul(B, BN, A, B), p.AB),
            residual(mul(p.AB, ABN, B), B),
        ],
        "(AB)^N = A^-1 BN",
        residual(ABN, Ainv @ BN),
        tol,
    )


@dataclass
class ConsequenceReport:
    premise_residuals: list[float]
    consequence_residuals: dict[str, float]
    tol: float

    @property
    def implied(self) -> bool:
        return all(r <= self.tol for r in self.premise_residuals)

    @property
    def consequences_hold(self) -> dict[str, bool]:
        return {k: v <= self.tol for k, v in self.consequence_residuals.items()}

    @property
    def implication_respected(self) -> bool:
        return not self.implied or all(self.consequences_hold.values())

    def as_dict(self) -> dict:
        return {
            "premise_residuals": self.premise_residuals,
            "implied": self.implied,
            "consequences": {
                k: {"residual": v, "holds": self.consequences_hold[k]}
                for k, v in self.consequence_residuals.items()
            },
            "implication_respected": self.implication_respected,
            "tol": self.tol,
        }


def check_commutation_consequences(A, B, tol=PENROSE_TOL, ctx=None) -> ConsequenceReport:
    """Four commutation identities implied by the two premises of ``check_rol_essential``."""
    p = _pair(A, B, ctx)
    base = check_rol_essential(A, B, tol, p)
    A, B, AN, BN, Ae, Be = p.A, p.B, p.AN, p.BN, p.Ae, p.Be
    cons = {
        "AN A B B* = B B* AN A": residual(mul(AN, A, B, B.H), mul(B, B.H, AN, A)),
        "Ae B B* A* = A B B* Ae*": residual(mul(Ae, B, B.H, A.H), mul(A, B, B.H, Ae.H)),
        # the printed right-hand side A* A BN B only typechecks for square B; the
        # projector BBN is what commutes with A* A (mirror of the first identity)
        "B BN A* A = A* A B BN": residual(mul(B, BN, A.H, A), mul(A.H, A, B, BN)),
        "Be* A* A B = B* A* A Be": residual(mul(Be.H, A.H, A, B), mul(B.H, A.H, A, Be)),
    }
    return ConsequenceReport(base.premise_residuals, cons, tol)


@dataclass
class InnerInverseReport:
    member_123: bool
    member_124: bool
    left_residual: float | None
    right_residual: float | None
    tol: float

    @property
    def holds(self) -> bool:
        return all(r <= self.tol for r in (self.left_residual, self.right_residual) if r is not None)

    def as_dict(self) -> dict:
        return {
            "member_123": self.member_123,
            "member_124": self.member_124,
            "AX = AAN residual": self.left_residual,
            "XA = ANA residual": self.right_residual,
            "holds": self.holds,
            "tol": self.tol,
        }


def inner_inverse_lemma(A: DualMatrix, X: DualMatrix, tol=PENROSE_TOL, rtol=RANK_RTOL) -> InnerInverseReport:
    """For X̂ in Â{1,2,3} check ÂX̂ = ÂÂ^N; for X̂ in Â{1,2,4} check X̂Â = Â^NÂ."""
    rep = penrose_check(A, X, tol=tol, rtol=rtol)
    in123 = rep.passes[1] and rep.passes[2] and rep.passes[3]
    in124 = rep.passes[1] and rep.passes[2] and rep.passes[4]
    if not (in123 or in124):
        raise NotAMember(f"candidate is in neither A{{1,2,3}} nor A{{1,2,4}}: {rep.residuals}")
    AN = ndmpi(A, rtol)
    left = residual(A @ X, A @ AN) if in123 else None
    right = residual(X @ A, AN @ A) if in124 else None
    return InnerInverseReport(in123, in124, left, right, tol)


def inner_123_candidates(B: DualMatrix, count: int = 8, seed=None, tol=PENROSE_TOL, rtol=RANK_RTOL):
    """Members of B̂{1,2,3} found by perturbing B̂^N and filtering with the Penrose check.

    Directions are (I - B̂^N B̂) Ŵ B̂ B̂^N (which stay in the set when B̂_n = 0) mixed
    with unstructured (I - B̂^N B̂) Ŵ; only oracle-approved candidates are returned.
    """
    rng = np.random.default_rng(seed)
    BN = ndmpi(B, rtol)
    q, n = B.shape
    I = DualMatrix.identity(n)
    proj = I - BN @ B
    out = [BN]
    for k in range(count):
        W = DualMatrix(
            rng.standard_normal((n, q)) + 1j * rng.standard_normal((n, q)),
            rng.standard_normal((n, q)) + 1j * rng.standard_normal((n, q)),
        )
        D = mul(proj, W, B, BN) if k % 2 == 0 else proj @ W
        X = BN + D
        rep = penrose_check(B, X, which=(1, 2, 3), tol=tol, rtol=rtol)
        if rep.all_pass:
            out.append(X)
    return out


def check_rol_via_123(A, B, tol=PENROSE_TOL, ctx=None) -> LawReport:
    """ROL holds iff (ÂB̂)^N = B̂^N B̂ X̂ Â^N for some X̂ in B̂{1,2,3}; witness X̂ = B̂^N.

    ``implication_respected`` here means both sides agree (the statement is an
    equivalence).
    """
    p = _pair(A, B, ctx)
    A, B, AN, BN, ABN = p.A, p.B, p.AN, p.BN, p.ABN
    rep = LawReport(
        "rol-123",
        ["(AB)^N = BN B X AN with X = BN"],
        [residual(ABN, mul(BN, B, BN, AN))],
        "(AB)^N = BN AN",
        residual(ABN, p.BNAN),
        tol,
    )
    rep.notes["equivalence_respected"] = all(rep.premises_hold) == rep.conclusion_holds
    return rep


CHECKERS = {
    "essential": check_rol_essential,
    "plain": check_rol_plain,
    "single": check_rol_single,
    "dmpgi": check_rol_dmpgi_link,
    "commuting": check_rol_commuting,
    "fol": check_fol,
    "invertible": check_rol_invertible,
    "123": check_rol_via_123,
}
