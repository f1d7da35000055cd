"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


class ValidationError(ValueError):
    """Input data is not acceptable (non-finite entries, empty matrix, ...)."""


class ConfigError(ValueError):
    """A solver or schedule configuration violates one of its invariants."""


class MatrixParseError(ValueError):
    """A matrix file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
