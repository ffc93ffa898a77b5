"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside its documented range or shape."""


class InfeasibleOracleError(RuntimeError):
    """The exhaustive oracle refused an instance that exceeds its enumeration bound."""
