"""Exception hierarchy shared by every module of the toolkit."""


class FracIneqError(Exception):
    """Base class for all toolkit errors."""


class DomainError(FracIneqError, ValueError):
    """An argument lies outside the domain of the operation."""


class EvaluationError(FracIneqError, ArithmeticError):
    """A function produced a non-finite value at a sampled point."""

    def __init__(self, message, point=None):
        super().__init__(message if point is None else f"{message} (at {point!r})")
        self.point = point


class PreconditionError(FracIneqError):
    """A theorem's hypotheses are not met and strict mode is on."""


class ConfigError(FracIneqError, ValueError):
    """A run configuration or function spec string is malformed."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
