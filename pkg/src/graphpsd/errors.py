"""Exception types shared across the package."""


class GraphPSDError(Exception):
    """Base class for all errors raised by this package."""


class InvariantViolation(GraphPSDError):
    """A structural invariant of a domain object does not hold."""


class ParseError(GraphPSDError):
    """A text input could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class FailedToConnect(GraphPSDError):
    """Sensor-graph generation exhausted its attempts without connectivity."""


class ConvergenceFailure(GraphPSDError):
    """The eigensolver did not converge."""


class InvalidSupport(GraphPSDError):
    """A spectral support set is empty or references unknown indices."""


class NonFinite(GraphPSDError):
    """A numerical quantity overflowed or underflowed to a non-finite value."""


class ConfigError(GraphPSDError):
    """An experiment configuration is incomplete or inconsistent."""
