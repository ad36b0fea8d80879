"""Exception types shared across the package."""


class CannError(Exception):
    """Base class for all package errors."""


class DomainError(CannError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class StructureError(CannError, ValueError):
    """Array shapes or layer sizes do not chain consistently."""


class DatasetError(CannError, ValueError):
    """A dataset file or table could not be parsed or validated.

    ``line`` carries the 1-based line number when the failure is tied to a
    specific row of a CSV file.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DivergenceError(CannError, RuntimeError):
    """Training produced a non-finite loss."""

    def __init__(self, epoch: int, loss: float, weights=None):
        self.epoch = epoch
        self.loss = loss
        self.weights = weights
        super().__init__(f"non-finite loss ({loss}) at epoch {epoch}")
