"""Semantic exception hierarchy for facomp."""


class FacompError(Exception):
    """Base class for all facomp errors."""


class ParameterError(FacompError, ValueError):
    """An argument violates its domain contract."""


class EmptyInputError(ParameterError):
    """A nonempty collection of samples was required."""


class TiesError(ParameterError):
    """Tied values where a rank statistic requires continuous (tie-free) input."""


class TrialCapError(FacompError, RuntimeError):
    """Requested Monte-Carlo trial count exceeds the configured cap."""


class ConfigError(FacompError, ValueError):
    """Configuration text could not be parsed or validated.

    ``line`` is the 1-based line number of the offending entry, or None when
    the error is not tied to a specific line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
