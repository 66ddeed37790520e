"""Pretty printer emitting the canonical one-comment-per-step layout."""

from __future__ import annotations

from fractions import Fraction

from .nodes import (
    Assignment,
    Binary,
    Comment,
    Expression,
    Grouped,
    NumberLiteral,
    OPERATOR_SYMBOLS,
    PoTProgram,
    Return,
    Unary,
    VariableRef,
)


def _literal_source(value: Fraction, had_decimal_point: bool) -> str:
    if value.denominator == 1:
        return f"{value.numerator}.0" if had_decimal_point else str(value.numerator)
    # Lexable literals always have a finite decimal expansion.
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{value} has no finite decimal form")
    digits = max(twos, fives)
    scaled = value * 10**digits
    text = f"{scaled.numerator:0{digits + 1}d}"
    return f"{text[:-digits]}.{text[-digits:]}"


def expression_source(expr: Expression) -> str:
    if isinstance(expr, NumberLiteral):
        return _literal_source(expr.value, expr.had_decimal_point)
    if isinstance(expr, VariableRef):
        return expr.name
    if isinstance(expr, Unary):
        return "-" + expression_source(expr.operand)
    if isinstance(expr, Grouped):
        return "(" + expression_source(expr.inner) + ")"
    if isinstance(expr, Binary):
        sym = OPERATOR_SYMBOLS[expr.op]
        return f"{expression_source(expr.left)} {sym} {expression_source(expr.right)}"
    raise TypeError(f"cannot print {type(expr).__name__}")


def to_source(program: PoTProgram) -> str:
    """Render the program back to source; reparsing yields an equal AST."""
    lines = ["def solution():"]
    for stmt in program.statements:
        if isinstance(stmt, Comment):
            lines.append(f"    #{stmt.text}")
        elif isinstance(stmt, Assignment):
            lines.append(f"    {stmt.name} = {expression_source(stmt.expr)}")
        elif isinstance(stmt, Return):
            lines.append(f"    return {expression_source(stmt.expr)}")
    return "\n".join(lines) + "\n"
