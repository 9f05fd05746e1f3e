"""Shared exception types."""


class BraidcheckError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(BraidcheckError):
    pass


class ShapeMismatch(BraidcheckError):
    pass


class ParentMismatch(BraidcheckError):
    pass


class SingularError(BraidcheckError):
    """Raised when inverting a singular matrix. Carries the rank as a certificate."""

    def __init__(self, rank, size=None):
        self.rank = rank
        self.size = size
        msg = f"matrix is singular (rank {rank}"
        if size is not None:
            msg += f" < {size}"
        super().__init__(msg + ")")


class UnsupportedParams(BraidcheckError):
    pass


class NotAGroup(BraidcheckError):
    pass


class InternalInconsistency(BraidcheckError):
    """Two provably-equivalent criteria disagreed: an implementation bug, never a verdict."""


class DescentFailure(BraidcheckError):
    """A diagram evaluation did not factor through the coend projection."""


class ConventionMismatch(BraidcheckError):
    """Diagrammatic and closed-form computations of the same map disagree."""


class TypeMismatch(BraidcheckError):
    def __init__(self, slice_index, position, message=""):
        self.slice_index = slice_index
        self.position = position
        super().__init__(
            f"wire type mismatch at slice {slice_index}, position {position}"
            + (f": {message}" if message else "")
        )


class UnboundSymbol(BraidcheckError):
    pass


class ParseError(BraidcheckError):
    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        super().__init__(f"parse error at line {line}, col {col}: {message}")


class ValidationError(BraidcheckError):
    def __init__(self, axiom, message=""):
        self.axiom = axiom
        super().__init__(f"validation failed: {axiom}" + (f" ({message})" if message else ""))
