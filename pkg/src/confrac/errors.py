"""Exception types shared across the package."""


class ModeMismatchError(TypeError):
    """Scalars from different arithmetic modes met in one operation."""


class DomainError(ValueError):
    """An argument lies outside the stated domain of an operation."""


class PoleError(ZeroDivisionError):
    """The requested truncation of a fraction sits on a pole (q = 0)."""
