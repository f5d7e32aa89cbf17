"""Exception types shared across the toolkit."""


class LumenError(Exception):
    """Base class for all toolkit errors."""


class DomainError(LumenError, ValueError):
    """An argument lies outside the physically meaningful domain."""


class NonConvergenceError(LumenError, RuntimeError):
    """An iterative numeric procedure hit its depth or iteration limit."""


class ZeroSpectrumError(LumenError, ValueError):
    """A spectrum is identically zero where a nonzero integral is required."""


class UnsupportedModelError(LumenError, TypeError):
    """The operation cannot handle this spectrum model variant."""


class ParseError(LumenError, ValueError):
    """A data file could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(LumenError, ValueError):
    """Parsed data violates a structural invariant."""
