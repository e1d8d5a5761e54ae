"""Exception types shared across the package."""


class DualMPError(Exception):
    """Base class for all errors raised by dualmp."""


class NotAppreciable(DualMPError, ZeroDivisionError):
    """A dual scalar with zero standard part was used where an inverse is needed."""


class NegativeValue(DualMPError, ValueError):
    pass


class ShapeMismatch(DualMPError, ValueError):
    pass


class NoConvergence(DualMPError, ArithmeticError):
    pass


class NotHermitian(DualMPError, ValueError):
    pass


class InvalidRank(DualMPError, ValueError):
    pass


class NotInvertible(DualMPError, ArithmeticError):
    pass


class DoesNotExist(DualMPError):
    """Raised when a generalized inverse has no solution for the given matrix.

    ``nonessential_norm`` carries the max-abs entry of the nonessential part,
    which is the obstruction.
    """

    def __init__(self, message, nonessential_norm=0.0):
        super().__init__(message)
        self.nonessential_norm = nonessential_norm


class NotDecomposable(DoesNotExist):
    pass


class InternalExistenceFailure(DualMPError, RuntimeError):
    pass


class OracleMismatch(DualMPError, AssertionError):
    pass


class CandidateRejected(DualMPError, AssertionError):
    pass


class NotAMember(DualMPError, ValueError):
    pass


class ParseError(DualMPError, ValueError):
    pass


class DimensionError(ParseError):
    pass
