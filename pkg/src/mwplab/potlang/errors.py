"""Error taxonomy for the solution-function dialect.

Every failure of parsing or evaluation maps to exactly one ``ErrorKind`` so
that executable-code rates computed downstream are unambiguous.
"""

from __future__ import annotations

import enum


class ErrorKind(enum.Enum):
    LEX_ERROR = "lex_error"
    PARSE_ERROR = "parse_error"
    UNSUPPORTED_CONSTRUCT = "unsupported_construct"
    UNDEFINED_VARIABLE = "undefined_variable"
    DIVISION_BY_ZERO = "division_by_zero"
    NON_INTEGER_EXPONENT = "non_integer_exponent"
    MISSING_RETURN = "missing_return"
    NO_SOLUTION_FUNCTION = "no_solution_function"


class PotError(Exception):
    """Raised for any failure while parsing or evaluating a solution function."""

    def __init__(self, kind: ErrorKind, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}")
        self.kind = kind
        self.message = message
        self.line = line
        self.column = column
