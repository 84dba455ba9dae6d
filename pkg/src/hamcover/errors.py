"""Exception types shared across the package."""


class HamcoverError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(HamcoverError, ValueError):
    """An argument violates an operation's precondition."""


class ParseError(HamcoverError, ValueError):
    """Malformed graph or demand input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapabilityError(HamcoverError):
    """The requested mode is not available for this input size."""


class CoverFailure(HamcoverError):
    """A covering stage could not complete.

    ``stage`` names the step that failed and ``residual`` optionally carries
    the edges that were left uncovered.
    """

    def __init__(self, message: str, stage: str = "", residual=None):
        self.stage = stage
        self.residual = residual
        super().__init__(message)
