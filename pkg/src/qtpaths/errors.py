"""Exception types shared across the package."""


class QTPathsError(Exception):
    """Base class for all package-specific errors."""


class DivisionByZero(QTPathsError):
    """Division by the zero polynomial or rational function."""


class NotPolynomial(QTPathsError):
    """A quotient that was required to be a polynomial has a nonzero remainder.

    This is a *finding*, not an internal error: a ratio-form identity whose
    prefactor fails to divide is falsified. Callers must surface it.
    """


class InvalidPath(QTPathsError):
    """An area word, labelling or decoration set violates the path axioms."""


class InvalidEncoding(QTPathsError):
    """An infinity-form path cannot be pushed to a valid zero-labelled path."""


class InvalidParams(QTPathsError):
    """An unsupported parameter combination (e.g. rise decorations on LSQ')."""


class IndexOutOfRange(QTPathsError):
    """A run index or shift outside 0..top run index."""


class UnrealizableWord(QTPathsError):
    """No path of the requested shift has the given diagonal word."""


class DegreeTooLarge(QTPathsError):
    """A symmetric-function computation exceeds the configured degree bound."""


class SingularMatrix(QTPathsError):
    """A basis-change matrix failed to invert. Must not happen; fatal."""


class UnsupportedTransform(QTPathsError):
    """A plethystic alphabet transform outside the supported family."""
