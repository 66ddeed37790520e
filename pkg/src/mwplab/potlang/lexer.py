"""Line tokenizer for the solution dialect.

Statements are line-oriented, so the lexer works on one logical line at a
time. Characters that belong to Python but not to the dialect (quotes,
brackets, comparison operators, ...) raise UNSUPPORTED_CONSTRUCT; anything
else unrecognized is a LEX_ERROR.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ErrorKind, PotError

NUMBER = "NUMBER"
NAME = "NAME"
KEYWORD = "KEYWORD"
OP = "OP"
LPAREN = "LPAREN"
RPAREN = "RPAREN"
ASSIGN = "ASSIGN"
END = "END"

KEYWORDS = {
    "return", "for", "while", "if", "elif", "else", "def", "class", "import",
    "from", "with", "try", "except", "finally", "lambda", "and", "or", "not",
    "in", "is", "global", "nonlocal", "assert", "del", "pass", "break",
    "continue", "yield", "raise",
}

# Valid Python, excluded from the dialect on purpose.
_UNSUPPORTED_CHARS = {
    "'": "string literal",
    '"': "string literal",
    "[": "list/index syntax",
    "]": "list/index syntax",
    "{": "dict/set syntax",
    "}": "dict/set syntax",
    ",": "tuple/argument syntax",
    "<": "comparison operator",
    ">": "comparison operator",
    "!": "comparison operator",
    "&": "bitwise operator",
    "|": "bitwise operator",
    "^": "bitwise operator",
    "~": "bitwise operator",
    ";": "compound statement",
    ":": "block syntax",
    "@": "decorator/matmul syntax",
}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int
    value: Fraction | None = None
    had_decimal_point: bool = False


def tokenize(text: str, line_no: int) -> list[Token]:
    """Tokenize one logical line; columns are 1-based within it."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        col = i + 1
        if ch in " \t":
            i += 1
            continue
        if ch == "#":  # trailing comment: rest of line is ignored
            break
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            lexeme = text[i:j]
            if lexeme == ".":
                raise PotError(ErrorKind.LEX_ERROR, "lone '.'", line_no, col)
            tokens.append(
                Token(NUMBER, lexeme, line_no, col,
                      value=Fraction(lexeme), had_decimal_point=seen_dot)
            )
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = KEYWORD if word in KEYWORDS else NAME
            tokens.append(Token(kind, word, line_no, col))
            i = j
            continue
        if text.startswith("**", i):
            tokens.append(Token(OP, "**", line_no, col))
            i += 2
            continue
        if text.startswith("//", i):
            tokens.append(Token(OP, "//", line_no, col))
            i += 2
            continue
        if text.startswith("==", i):
            raise PotError(
                ErrorKind.UNSUPPORTED_CONSTRUCT, "comparison operator '=='",
                line_no, col,
            )
        if ch in "+-*/%":
            tokens.append(Token(OP, ch, line_no, col))
            i += 1
            continue
        if ch == "=":
            tokens.append(Token(ASSIGN, "=", line_no, col))
            i += 1
            continue
        if ch == "(":
            tokens.append(Token(LPAREN, "(", line_no, col))
            i += 1
            continue
        if ch == ")":
            tokens.append(Token(RPAREN, ")", line_no, col))
            i += 1
            continue
        if ch in _UNSUPPORTED_CHARS:
            raise PotError(
                ErrorKind.UNSUPPORTED_CONSTRUCT,
                f"{_UNSUPPORTED_CHARS[ch]} ({ch!r}) is not part of the dialect",
                line_no, col,
            )
        raise PotError(ErrorKind.LEX_ERROR, f"unexpected character {ch!r}", line_no, col)
    tokens.append(Token(END, "", line_no, n + 1))
    return tokens
