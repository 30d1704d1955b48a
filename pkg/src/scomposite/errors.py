"""Exception types shared across the package."""


class FormatError(ValueError):
    """A text artifact is malformed; carries the offending line number when known."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class CapacityError(RuntimeError):
    """An exhaustive routine was asked to run beyond its size guard."""


class BudgetExhaustedError(RuntimeError):
    """A search ran out of node expansions before reaching an exhaustive answer."""


class DecodeError(ValueError):
    """A coloring could not be decoded into a truth assignment."""


class InternalConsistencyError(RuntimeError):
    """A constructed object failed its own verification; reports the instance."""
