"""Exception types shared across the package."""


class CoxruinsError(Exception):
    """Base class for all package errors."""


class ParseError(CoxruinsError):
    """Input text is not a well-formed system description."""


class InvalidMatrix(CoxruinsError):
    """A Coxeter matrix invariant is violated.

    Carries the offending (row, col) indices when applicable.
    """

    def __init__(self, message, indices=None):
        super().__init__(message)
        self.indices = indices


class ExplosionGuard(CoxruinsError):
    """An enumeration exceeded its configured cap."""


class WordTooLong(ExplosionGuard):
    """A braid-move equivalence class exceeded the word cap."""


class NotEven(CoxruinsError):
    """Operation requires an even Coxeter system."""


class NotFlag(CoxruinsError):
    """Operation requires a flag nerve."""


class FaceAbsent(CoxruinsError):
    """Requested face is not a simplex of the complex."""


class TypeMismatch(CoxruinsError):
    """Cell type is not compatible with the requested construction."""


class TruncationUnsafe(CoxruinsError):
    """A needed chamber translate leaves the enumerated ball; raise the radius."""


class NotClosed(CoxruinsError):
    """A cell subset is not closed under taking faces."""
