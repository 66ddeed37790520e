"""Parser for generated solution functions.

Grammar, one statement per logical line inside the function body:

    header     :=  'def' 'solution' '(' ')' ':'
    body-line  :=  comment | assignment | return
    comment    :=  '#' <raw text to end of line>
    assignment :=  NAME '=' expr
    return     :=  'return' expr
    expr       :=  term (('+' | '-') term)*
    term       :=  factor (('*' | '/' | '//' | '%') factor)*
    factor     :=  '-' factor | power
    power      :=  atom ['**' factor]
    atom       :=  NUMBER | NAME | '(' expr ')'

Generators wrap the function in all kinds of extra text, so the parser is
deliberately tolerant at the edges: anything before the header is skipped,
and anything after the body (print calls, example usage, prose) is kept
verbatim in ``trailing_ignored``. Inside the body it fails loudly: loops,
conditionals, calls, strings, and collections are UNSUPPORTED_CONSTRUCT,
never silently dropped.
"""

from __future__ import annotations

import re

from . import lexer
from .errors import ErrorKind, PotError
from .lexer import Token
from .nodes import (
    Assignment,
    Binary,
    Comment,
    Expression,
    Grouped,
    NumberLiteral,
    PoTProgram,
    Return,
    Statement,
    Unary,
    VariableRef,
)

_HEADER_RE = re.compile(r"^(\s*)def\s+solution\s*\(\s*\)\s*:\s*(#.*)?$")

_OP_NAMES = {"+": "add", "-": "sub", "*": "mul", "/": "truediv",
             "//": "floordiv", "%": "mod", "**": "pow"}


def _indent_width(line: str) -> int:
    width = 0
    for ch in line:
        if ch == " ":
            width += 1
        elif ch == "\t":
            width += 8 - width % 8
        else:
            break
    return width


def _paren_balance(line: str) -> int:
    depth = 0
    for ch in line:
        if ch == "#":
            break
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
    return depth


class _ExprParser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_end(self) -> None:
        tok = self.peek()
        if tok.kind == lexer.KEYWORD:
            raise PotError(ErrorKind.UNSUPPORTED_CONSTRUCT,
                           f"'{tok.text}' is not part of the dialect",
                           tok.line, tok.column)
        if tok.kind != lexer.END:
            raise PotError(ErrorKind.PARSE_ERROR,
                           f"unexpected {tok.text!r} after expression",
                           tok.line, tok.column)

    def expression(self) -> Expression:
        node = self.term()
        while self.peek().kind == lexer.OP and self.peek().text in ("+", "-"):
            op = self.advance()
            right = self.term()
            node = Binary(_OP_NAMES[op.text], node, right,
                          line=op.line, column=op.column)
        return node

    def term(self) -> Expression:
        node = self.factor()
        while self.peek().kind == lexer.OP and self.peek().text in ("*", "/", "//", "%"):
            op = self.advance()
            right = self.factor()
            node = Binary(_OP_NAMES[op.text], node, right,
                          line=op.line, column=op.column)
        return node

    def factor(self) -> Expression:
        tok = self.peek()
        if tok.kind == lexer.OP and tok.text == "-":
            self.advance()
            return Unary(self.factor(), line=tok.line, column=tok.column)
        return self.power()

    def power(self) -> Expression:
        node = self.atom()
        if self.peek().kind == lexer.OP and self.peek().text == "**":
            op = self.advance()
            right = self.factor()  # right-associative, unary allowed on the right
            node = Binary("pow", node, right, line=op.line, column=op.column)
        return node

    def atom(self) -> Expression:
        tok = self.advance()
        if tok.kind == lexer.NUMBER:
            return NumberLiteral(tok.value, tok.had_decimal_point,
                                 line=tok.line, column=tok.column)
        if tok.kind == lexer.NAME:
            if self.peek().kind == lexer.LPAREN:
                raise PotError(ErrorKind.UNSUPPORTED_CONSTRUCT,
                               f"function call {tok.text}(...)",
                               tok.line, tok.column)
            return VariableRef(tok.text, line=tok.line, column=tok.column)
        if tok.kind == lexer.LPAREN:
            inner = self.expression()
            closing = self.advance()
            if closing.kind != lexer.RPAREN:
                raise PotError(ErrorKind.PARSE_ERROR, "expected ')'",
                               closing.line, closing.column)
            return Grouped(inner, line=tok.line, column=tok.column)
        if tok.kind == lexer.KEYWORD:
            raise PotError(ErrorKind.UNSUPPORTED_CONSTRUCT,
                           f"'{tok.text}' is not part of the dialect",
                           tok.line, tok.column)
        raise PotError(ErrorKind.PARSE_ERROR,
                       f"unexpected {tok.text!r} in expression" if tok.text
                       else "unexpected end of line in expression",
                       tok.line, tok.column)


def _parse_statement(text: str, line_no: int) -> Statement:
    stripped = text.strip()
    if stripped.startswith("#"):
        return Comment(stripped[1:], line=line_no)
    tokens = lexer.tokenize(text, line_no)
    first = tokens[0]
    if first.kind == lexer.KEYWORD:
        if first.text == "return":
            p = _ExprParser(tokens)
            p.advance()
            expr = p.expression()
            p.expect_end()
            return Return(expr, line=line_no)
        raise PotError(ErrorKind.UNSUPPORTED_CONSTRUCT,
                       f"'{first.text}' statement", first.line, first.column)
    if first.kind == lexer.NAME and tokens[1].kind == lexer.ASSIGN:
        p = _ExprParser(tokens)
        p.advance()
        p.advance()
        expr = p.expression()
        p.expect_end()
        return Assignment(first.text, expr, line=line_no)
    if first.kind == lexer.NAME and tokens[1].kind == lexer.LPAREN:
        raise PotError(ErrorKind.UNSUPPORTED_CONSTRUCT,
                       f"function call {first.text}(...)",
                       first.line, first.column)
    raise PotError(ErrorKind.PARSE_ERROR,
                   "expected assignment or return", first.line, first.column)


def parse(source: str) -> PoTProgram:
    """Parse the first ``def solution():`` function found in ``source``.

    Raises PotError with NO_SOLUTION_FUNCTION when no header is present,
    MISSING_RETURN when the body has no return statement, and PARSE_ERROR /
    UNSUPPORTED_CONSTRUCT / LEX_ERROR for anything malformed inside the body.
    """
    lines = source.splitlines()
    header_idx = None
    header_indent = 0
    for idx, line in enumerate(lines):
        m = _HEADER_RE.match(line)
        if m:
            header_idx = idx
            header_indent = _indent_width(line)
            break
    if header_idx is None:
        raise PotError(ErrorKind.NO_SOLUTION_FUNCTION,
                       "no 'def solution():' header found", 1, 1)

    statements: list[Statement] = []
    trailing: list[str] = []
    i = header_idx + 1
    saw_return = False
    while i < len(lines):
        raw = lines[i]
        if not raw.strip():
            i += 1
            continue
        if _indent_width(raw) <= header_indent:
            trailing = lines[i:]
            break
        logical = raw
        start_line = i + 1
        while _paren_balance(logical) > 0 and i + 1 < len(lines):
            i += 1
            logical = logical + " " + lines[i].strip()
        if saw_return:
            raise PotError(ErrorKind.PARSE_ERROR, "statement after return",
                           start_line, 1)
        stmt = _parse_statement(logical, start_line)
        statements.append(stmt)
        if isinstance(stmt, Return):
            saw_return = True
        i += 1

    if not saw_return:
        raise PotError(ErrorKind.MISSING_RETURN,
                       "function body has no return statement",
                       header_idx + 1, 1)
    return PoTProgram("solution", statements, trailing)
