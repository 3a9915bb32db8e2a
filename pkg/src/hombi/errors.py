"""Exception types shared across the package."""

from __future__ import annotations


class HombiError(Exception):
    """Base class for every error raised by hombi."""


class DimensionMismatchError(HombiError, ValueError):
    """Operands live on spaces of different dimension (or different spaces)."""

    def __init__(self, operand: str, expected, got):
        self.operand = operand
        self.expected = expected
        self.got = got
        super().__init__(f"{operand}: expected {expected}, got {got}")


class RationalParseError(HombiError, ValueError):
    pass


class DocumentError(HombiError, ValueError):
    """A structure / quiver / tensor document could not be read."""


class ConstructionError(HombiError):
    """A construction's precondition failed.

    ``report`` carries the failing check report when there is one, and
    ``witness`` a failing basis index or index pair.
    """

    def __init__(self, message: str, report=None, witness=None):
        super().__init__(message)
        self.report = report
        self.witness = witness


class InternalConsistencyError(HombiError):
    """An identity that must hold by theorem failed on concrete data."""


# quiver errors: one kind per failure mode

class QuiverError(HombiError, ValueError):
    pass


class QuiverSyntaxError(QuiverError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DanglingReferenceError(QuiverError):
    pass


class DuplicateNameError(QuiverError):
    pass


class NonInjectiveVertexMapError(QuiverError):
    pass


class IncompatibleArrowError(QuiverError):
    """An arrow is not sent to an arrow with the mapped source and target."""


class CyclicQuiverError(QuiverError):
    def __init__(self, message: str = "infinite path algebra unsupported"):
        super().__init__(message)


class UnsupportedCheckError(HombiError, ValueError):
    """A check was requested in a setting it is not defined for."""


class IncompleteMapError(QuiverError):
    """A quiver morphism leaves a vertex or an arrow without an image."""
