"""Restricted interpreter for generated solution functions.

The dialect is straight-line code only: comments, assignments of arithmetic
expressions, and one final return. ``execute_source`` is the tolerant
pipeline entry point; ``parse``/``evaluate`` raise :class:`PotError` with a
precise error kind.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ErrorKind, PotError
from .interpreter import Execution, PoTValue, evaluate, render_rational, run
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
    expressions,
    walk,
)
from .parser import parse
from .pretty import expression_source, to_source
from .profile import (
    OPERATION_NAMES,
    OPERATOR_FLAGS,
    OperationProfile,
    profile_operations,
    question_mentions_fractions,
    uses_only,
)

#: Status value meaning "parsed and evaluated to a number".
STATUS_OK = "ok"


@dataclass(frozen=True)
class ExecutionOutcome:
    """Pipeline-facing result: either an answer or a single error kind."""

    status: str  # STATUS_OK or an ErrorKind value
    answer: str | None = None
    detail: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK

    def as_dict(self) -> dict:
        return {"status": self.status, "answer": self.answer, "detail": self.detail}

    @classmethod
    def from_dict(cls, data: dict) -> "ExecutionOutcome":
        return cls(status=data["status"], answer=data.get("answer"),
                   detail=data.get("detail"))


def execute_source(source: str) -> ExecutionOutcome:
    """Parse and run raw solution text, mapping any failure to its kind."""
    try:
        value = evaluate(parse(source))
    except PotError as err:
        return ExecutionOutcome(status=err.kind.value, detail=str(err))
    return ExecutionOutcome(status=STATUS_OK, answer=str(value))


__all__ = [
    "Assignment", "Binary", "Comment", "ErrorKind", "Execution",
    "ExecutionOutcome", "Expression", "Grouped", "NumberLiteral",
    "OPERATION_NAMES", "OPERATOR_FLAGS", "OperationProfile", "PoTProgram",
    "PoTValue", "PotError", "Return", "STATUS_OK", "Statement", "Unary",
    "VariableRef", "evaluate", "execute_source", "expression_source",
    "expressions", "parse", "profile_operations",
    "question_mentions_fractions", "render_rational", "run", "to_source",
    "uses_only", "walk",
]
