"""Errors raised while parsing and scoping queries and formulas."""
from relations.exceptions import AlgebraError


class ParseError(AlgebraError):
    """Malformed input, reported with a 1-based position and what would have been accepted."""

    def __init__(self, message, line=None, column=None, expected=()):
        self.message, self.line, self.column = message, line, column
        self.expected = tuple(sorted(expected))
        if line is not None:
            message = f"{line}:{column}: {message}"
        if self.expected:
            message = f"{message} (expected {', '.join(self.expected)})"
        super().__init__(message)


class FormulaError(AlgebraError):
    """A selection formula cannot be applied to the scheme it is used on."""


class ScopeError(FormulaError):
    """A formula names an unknown attribute or a value outside the compared domain."""
