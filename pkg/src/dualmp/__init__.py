"""Generalized inverses of dual complex matrices.

Â = A_s + A_d ε with ε² = 0. The central object is the NDMPI ``Â^N``, the
unique solution of ÂX̂Â = Â_e, X̂ÂX̂ = X̂ with ÂX̂ and X̂Â Hermitian, where Â_e is
the essential part of Â. Around it: a dual SVD, the other dual inverses, order
law checkers, a minimum-norm solver and an exact rational oracle.
"""

__version__ = "0.1.0"

from .dsvd import DualSVD, dual_svd, singular_values
from .errors import DoesNotExist, DualMPError, NotDecomposable, ParseError
from .inverse import (
    PENROSE_TOL,
    InverseKind,
    dmpgi,
    identity_suite,
    mpdgi,
    ndmpi,
    ndmpi_closed_form,
    penrose_check,
    wdmpgi,
)
from .laws import CHECKERS, LawReport
from .matrix import DualMatrix, essential_split
from .scalar import DualComplex, DualReal, total_cmp
from .solve import dual_rank_decomposition, solve_min_norm

__all__ = [
    "CHECKERS",
    "PENROSE_TOL",
    "DoesNotExist",
    "DualComplex",
    "DualMPError",
    "DualMatrix",
    "DualReal",
    "DualSVD",
    "InverseKind",
    "LawReport",
    "NotDecomposable",
    "ParseError",
    "dmpgi",
    "dual_rank_decomposition",
    "dual_svd",
    "essential_split",
    "identity_suite",
    "mpdgi",
    "ndmpi",
    "ndmpi_closed_form",
    "penrose_check",
    "singular_values",
    "solve_min_norm",
    "total_cmp",
    "wdmpgi",
]
