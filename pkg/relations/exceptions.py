"""Errors raised by the relation values and the algebra operators."""


class AlgebraError(Exception):
    """Base class for every error the engine raises on purpose."""


class ValidationError(AlgebraError):
    """A value violates a structural invariant (domain, empty tuple set, duplicate name)."""

    def __init__(self, message, line=None):
        self.message, self.line = message, line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CombinatorialLimit(AlgebraError):
    """An enumeration step would generate more objects than the configured cap."""

    def __init__(self, what, produced, cap):
        self.what, self.produced, self.cap = what, produced, cap
        super().__init__(f"{what} would generate {produced} objects (cap {cap})")


class InconsistentInput(AlgebraError):
    """An operator that requires normalized input was handed an inconsistent relation."""


class SchemeMismatch(AlgebraError):
    """Operand schemes do not fit the operator (different attributes, clashing domains)."""


class UnknownRelation(AlgebraError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown relation '{name}'")
