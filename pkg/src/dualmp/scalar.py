"""Dual scalars: a_s + a_d ε with ε² = 0.

``DualComplex`` carries complex parts, ``DualReal`` real ones. Both are
immutable. ``DualReal`` is totally ordered lexicographically: standard parts
first, dual parts break ties.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import total_ordering

from .errors import NegativeValue, NotAppreciable

SCALAR_TOL = 1e-12


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Kind(str, enum.Enum):
    POSITIVE_APPRECIABLE = "positive_appreciable"
    POSITIVE_INFINITESIMAL = "positive_infinitesimal"
    ZERO = "zero"
    NEGATIVE_INFINITESIMAL = "negative_infinitesimal"
    NEGATIVE_APPRECIABLE = "negative_appreciable"


def _coerce(x, cls):
    if isinstance(x, _DualBase):
        return x
    return cls(x, 0)


class _DualBase:
    std: complex
    dual: complex

    def __add__(self, other):
        other = _coerce(other, type(self))
        return _promote(self, other)(self.std + other.std, self.dual + other.dual)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, type(self))
        return _promote(self, other)(self.std - other.std, self.dual - other.dual)

    def __rsub__(self, other):
        return _coerce(other, type(self)) - self

    def __mul__(self, other):
        other = _coerce(other, type(self))
        return _promote(self, other)(
            self.std * other.std, self.std * other.dual + self.dual * other.std
        )

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(-self.std, -self.dual)

    def __truediv__(self, other):
        other = _coerce(other, type(self))
        return self * other.inv()

    def inv(self):
        if self.std == 0:
            raise NotAppreciable(f"{self!r} has zero standard part")
        s = 1 / self.std
        return type(self)(s, -self.dual * s * s)

    @property
    def is_appreciable(self) -> bool:
        return self.std != 0

    @property
    def is_infinitesimal(self) -> bool:
        return self.std == 0


def _promote(a, b):
    if isinstance(a, DualComplex) or isinstance(b, DualComplex):
        return DualComplex
    return type(a)


@dataclass(frozen=True)
class DualComplex(_DualBase):
    std: complex = 0j
    dual: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "std", complex(self.std))
        object.__setattr__(self, "dual", complex(self.dual))

    def conj(self) -> "DualComplex":
        return DualComplex(self.std.conjugate(), self.dual.conjugate())

    def __repr__(self):
        return f"({self.std}) + ({self.dual})ε"


@total_ordering
@dataclass(frozen=True, eq=True)
class DualReal(_DualBase):
    std: float = 0.0
    dual: float = 0.0

    def __post_init__(self):
        # keep Fraction/int exact; only reject complex input
        if isinstance(self.std, complex) or isinstance(self.dual, complex):
            raise TypeError("DualReal parts must be real")

    def conj(self) -> "DualReal":
        return self

    def __lt__(self, other):
        return total_cmp(self, _coerce(other, DualReal)) is Ordering.LESS

    def __repr__(self):
        return f"{self.std} + {self.dual}ε"


def arith(a, b, op: str):
    """Apply one ring operation (``add``, ``sub``, ``mul``, or ``neg`` of ``a``)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def conj(a):
    return a.conj()


def inv(a):
    return a.inv()


def total_cmp(a: DualReal, b: DualReal, tol: float = 0.0) -> Ordering:
    """Lexicographic comparison: standard parts first, dual parts on ties.

    With ``tol > 0`` parts differing by at most ``tol * (1 + |x| + |y|)`` count as equal.
    """

    def side(x, y):
        if abs(x - y) <= tol * (1 + abs(x) + abs(y)):
            return Ordering.EQUAL
        return Ordering.LESS if x < y else Ordering.GREATER

    first = side(a.std, b.std)
    return first if first != Ordering.EQUAL else side(a.dual, b.dual)


def classify(a: DualReal, tol: float = SCALAR_TOL) -> Kind:
    """Sign class of ``a``; standard parts within ``tol`` of zero count as zero.

    Pass ``tol=0`` for exact inputs.
    """
    if abs(a.std) > tol:
        return Kind.POSITIVE_APPRECIABLE if a.std > 0 else Kind.NEGATIVE_APPRECIABLE
    if abs(a.dual) > tol:
        return Kind.POSITIVE_INFINITESIMAL if a.dual > 0 else Kind.NEGATIVE_INFINITESIMAL
    return Kind.ZERO


def dual_sqrt(a: DualReal) -> DualReal:
    if a.std < 0:
        raise NegativeValue(f"square root of negative dual number {a!r}")
    if a.std == 0:
        raise NotAppreciable(f"square root of infinitesimal {a!r} is not a dual number")
    r = math.sqrt(a.std)
    return DualReal(r, a.dual / (2 * r))


def dual_abs(a: DualComplex) -> DualReal:
    """Modulus |a| of a dual complex scalar, first-order expansion.

    For an infinitesimal ``a`` this is ``|a_d| ε``.
    """
    if a.std == 0:
        return DualReal(0.0, abs(a.dual))
    m = abs(a.std)
    return DualReal(m, (a.std.conjugate() * a.dual).real / m)
