"""Exception hierarchy shared by every module."""


class GoldbachError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GoldbachError, ValueError):
    """An argument lies outside the domain an operation accepts."""


class IrrationalityError(DomainError):
    """A surd was requested for a perfect square radicand."""


class ConfigError(DomainError):
    """Invalid sweep configuration; ``field`` names the offending key path."""

    def __init__(self, field, message=None):
        self.field = field
        super().__init__(field if message is None else f"{field}: {message}")


class BudgetExceeded(GoldbachError, RuntimeError):
    """A step, precision or size budget was exhausted."""


class NumericalError(GoldbachError, ArithmeticError):
    """A floating-point consistency check failed."""
