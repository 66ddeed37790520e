"""Deterministic evaluator for parsed solution functions.

All arithmetic is over exact rationals (arbitrary-precision integer
numerator/denominator), so results are identical across platforms and the
integer/decimal distinction used by operation profiling is well-defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ErrorKind, PotError
from .nodes import (
    Assignment,
    Binary,
    Comment,
    Expression,
    Grouped,
    NumberLiteral,
    PoTProgram,
    Return,
    Unary,
    VariableRef,
)


def render_rational(value: Fraction, max_digits: int = 12) -> str:
    """Render a rational: integer form when whole, else a decimal with at
    most ``max_digits`` fractional digits (round half to even), trailing
    zeros stripped."""
    if value.denominator == 1:
        return str(value.numerator)
    sign = "-" if value < 0 else ""
    scaled = round(abs(value) * 10**max_digits)  # Fraction rounds half-even
    digits = f"{scaled:0{max_digits + 1}d}"
    int_part, frac_part = digits[:-max_digits], digits[-max_digits:]
    frac_part = frac_part.rstrip("0")
    if not frac_part:
        return sign + int_part
    return f"{sign}{int_part}.{frac_part}"


@dataclass(frozen=True)
class PoTValue:
    """Exact rational result of executing a solution function."""

    value: Fraction

    def __str__(self) -> str:
        return render_rational(self.value)

    @property
    def is_integer(self) -> bool:
        return self.value.denominator == 1


@dataclass
class Execution:
    """Result of running a program, plus what the run passed through."""

    result: PoTValue
    environment: dict[str, Fraction] = field(default_factory=dict)
    saw_non_integer: bool = False  # any evaluated value had a fractional part


class _Evaluator:
    def __init__(self) -> None:
        self.env: dict[str, Fraction] = {}
        self.saw_non_integer = False

    def eval(self, expr: Expression) -> Fraction:
        value = self._eval(expr)
        if value.denominator != 1:
            self.saw_non_integer = True
        return value

    def _eval(self, expr: Expression) -> Fraction:
        if isinstance(expr, NumberLiteral):
            return expr.value
        if isinstance(expr, VariableRef):
            try:
                return self.env[expr.name]
            except KeyError:
                raise PotError(ErrorKind.UNDEFINED_VARIABLE,
                               f"variable '{expr.name}' used before assignment",
                               expr.line, expr.column) from None
        if isinstance(expr, Grouped):
            return self.eval(expr.inner)
        if isinstance(expr, Unary):
            return -self.eval(expr.operand)
        if isinstance(expr, Binary):
            return self._binary(expr)
        raise PotError(ErrorKind.PARSE_ERROR, f"unknown node {type(expr).__name__}",
                       expr.line, expr.column)

    def _binary(self, expr: Binary) -> Fraction:
        left = self.eval(expr.left)
        right = self.eval(expr.right)
        op = expr.op
        if op == "add":
            return left + right
        if op == "sub":
            return left - right
        if op == "mul":
            return left * right
        if op in ("truediv", "floordiv", "mod") and right == 0:
            raise PotError(ErrorKind.DIVISION_BY_ZERO, "division by zero",
                           expr.line, expr.column)
        if op == "truediv":
            return left / right
        if op == "floordiv":
            return Fraction(math.floor(left / right))
        if op == "mod":
            return left - right * math.floor(left / right)
        if op == "pow":
            if right.denominator != 1:
                raise PotError(ErrorKind.NON_INTEGER_EXPONENT,
                               f"exponent {right} is not an integer",
                               expr.line, expr.column)
            if left == 0 and right < 0:
                raise PotError(ErrorKind.DIVISION_BY_ZERO,
                               "zero raised to a negative power",
                               expr.line, expr.column)
            return left ** int(right)
        raise PotError(ErrorKind.PARSE_ERROR, f"unknown operator {op!r}",
                       expr.line, expr.column)


def run(program: PoTProgram) -> Execution:
    """Execute the straight-line program and return the full execution."""
    ev = _Evaluator()
    for stmt in program.statements:
        if isinstance(stmt, Comment):
            continue
        if isinstance(stmt, Assignment):
            ev.env[stmt.name] = ev.eval(stmt.expr)
        elif isinstance(stmt, Return):
            return Execution(PoTValue(ev.eval(stmt.expr)), ev.env, ev.saw_non_integer)
    raise PotError(ErrorKind.MISSING_RETURN, "program ended without return",
                   program.statements[-1].line if program.statements else 1, 1)


def evaluate(program: PoTProgram) -> PoTValue:
    """Execute the program and return just its value."""
    return run(program).result
