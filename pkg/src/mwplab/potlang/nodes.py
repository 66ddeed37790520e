"""AST node types for the straight-line solution dialect.

Position fields are excluded from equality so that a pretty-printed and
reparsed program compares structurally equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

#: Closed operator set of the dialect; nothing else exists.
BINARY_OPERATORS = ("add", "sub", "mul", "truediv", "floordiv", "mod", "pow")

OPERATOR_SYMBOLS = {
    "add": "+",
    "sub": "-",
    "mul": "*",
    "truediv": "/",
    "floordiv": "//",
    "mod": "%",
    "pow": "**",
}


@dataclass
class Expression:
    line: int = field(default=0, compare=False, kw_only=True)
    column: int = field(default=0, compare=False, kw_only=True)


@dataclass
class NumberLiteral(Expression):
    """Non-negative rational literal; sign is applied by ``Unary``."""

    value: Fraction = Fraction(0)
    had_decimal_point: bool = False


@dataclass
class VariableRef(Expression):
    name: str = ""


@dataclass
class Unary(Expression):
    """Arithmetic negation, the only unary operator in the dialect."""

    operand: Expression = None  # type: ignore[assignment]


@dataclass
class Binary(Expression):
    op: str = ""  # one of BINARY_OPERATORS
    left: Expression = None  # type: ignore[assignment]
    right: Expression = None  # type: ignore[assignment]


@dataclass
class Grouped(Expression):
    """Parenthesized expression, kept so printing preserves grouping."""

    inner: Expression = None  # type: ignore[assignment]


@dataclass
class Statement:
    line: int = field(default=0, compare=False, kw_only=True)


@dataclass
class Comment(Statement):
    text: str = ""


@dataclass
class Assignment(Statement):
    name: str = ""
    expr: Expression = None  # type: ignore[assignment]


@dataclass
class Return(Statement):
    expr: Expression = None  # type: ignore[assignment]


@dataclass
class PoTProgram:
    """Parsed ``def solution():`` function.

    ``statements`` holds only comments, assignments, and a single final
    return. Top-level lines found after the function body (print calls,
    example usage, prose) are preserved verbatim in ``trailing_ignored``
    but never parsed or executed.
    """

    function_name: str = "solution"
    statements: list[Statement] = field(default_factory=list)
    trailing_ignored: list[str] = field(default_factory=list, compare=False)


def walk(expr: Expression):
    """Yield ``expr`` and every sub-expression beneath it."""
    yield expr
    if isinstance(expr, Unary):
        yield from walk(expr.operand)
    elif isinstance(expr, Binary):
        yield from walk(expr.left)
        yield from walk(expr.right)
    elif isinstance(expr, Grouped):
        yield from walk(expr.inner)


def expressions(program: PoTProgram):
    """Yield every expression node in the program, depth first."""
    for stmt in program.statements:
        if isinstance(stmt, Assignment):
            yield from walk(stmt.expr)
        elif isinstance(stmt, Return):
            yield from walk(stmt.expr)
