"""Exception types shared across the package.

DomainError marks violated preconditions or contract misuse (CLI exit 1),
ParseError marks malformed text input (CLI exit 2).
"""


class DomainError(ValueError):
    """An operation was called outside its documented domain."""


class ParseError(ValueError):
    """Malformed text input. Carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
