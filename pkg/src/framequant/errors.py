"""Exception types raised by framequant."""


class DimensionError(ValueError):
    """Dimensions of two objects do not agree, or a dimension is not allowed."""


class InvalidFunctionError(ValueError):
    """A phase-space function violates the hypotheses of the state construction."""


class NegativeEntryError(InvalidFunctionError):
    pass


class EntryTooLargeError(InvalidFunctionError):
    pass


class WrongTotalError(InvalidFunctionError):
    pass


class ComplexEntryError(InvalidFunctionError):
    pass


class MissingSourceError(ValueError):
    """Operation needs the generating phase-space function but the state has none."""


class CovarianceError(ArithmeticError):
    """A transformed state failed to match the reindexed quantization."""


class OrderingError(RuntimeError):
    """Eigenvectors could not be ordered by sign alternations.

    ``counts`` holds the alternation count of each eigenvector (eigenvalue order)
    so callers can report what went wrong.
    """

    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = list(counts) if counts is not None else []
