"""Math-operation profiling of solution functions.

Most flags come from the AST. The fractions flag cannot: a program dividing
two integers looks identical whether the question is about sharing pizza
slices or about "one third of the class", so it is inferred from fraction
surface forms in the question text. Human-assigned profiles, when present,
take precedence over this heuristic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .errors import PotError
from .interpreter import run
from .nodes import Binary, NumberLiteral, PoTProgram, expressions

#: Flag names in canonical order; the first four are the operator flags.
OPERATION_NAMES = ("addition", "subtraction", "multiplication", "division",
                   "fractions", "decimals")

OPERATOR_FLAGS = OPERATION_NAMES[:4]

_FRACTION_SURFACE = re.compile(
    r"\b\d+\s*/\s*\d+\b|\bhalf\b|\bhalves\b|\bthirds?\b|\bquarters?\b|\bfractions?\b",
    re.IGNORECASE,
)

_DIVISION_OPS = {"truediv", "floordiv", "mod"}


@dataclass(frozen=True)
class OperationProfile:
    """Which of the six K-8 math operations a question involves.

    An all-false profile is legal: some questions state their answer
    outright and need no operation at all.
    """

    addition: bool = False
    subtraction: bool = False
    multiplication: bool = False
    division: bool = False
    fractions: bool = False
    decimals: bool = False
    source: str = "auto"  # auto | human

    @property
    def distinct_count(self) -> int:
        return sum(getattr(self, name) for name in OPERATION_NAMES)

    @property
    def no_operations(self) -> bool:
        return self.distinct_count == 0

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in OPERATION_NAMES}

    def as_dict(self) -> dict:
        out: dict = self.flags()
        out["distinct_count"] = self.distinct_count
        out["source"] = self.source
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "OperationProfile":
        return cls(**{name: bool(data.get(name, False)) for name in OPERATION_NAMES},
                   source=data.get("source", "human"))


def question_mentions_fractions(question_text: str) -> bool:
    return bool(_FRACTION_SURFACE.search(question_text))


def profile_operations(program: PoTProgram, question_text: str) -> OperationProfile:
    """Derive an auto-source profile from the AST plus the question text.

    Total on parsed programs: when the program cannot be executed (e.g. an
    undefined variable), the decimals flag falls back to literal inspection
    alone.
    """
    addition = subtraction = multiplication = division = False
    decimal_literal = False
    for node in expressions(program):
        if isinstance(node, Binary):
            if node.op == "add":
                addition = True
            elif node.op == "sub":
                subtraction = True
            elif node.op == "mul":
                multiplication = True
            elif node.op in _DIVISION_OPS:
                division = True
        elif isinstance(node, NumberLiteral) and node.had_decimal_point:
            decimal_literal = True
    non_integer_value = False
    try:
        non_integer_value = run(program).saw_non_integer
    except PotError:
        pass
    return OperationProfile(
        addition=addition,
        subtraction=subtraction,
        multiplication=multiplication,
        division=division,
        fractions=question_mentions_fractions(question_text),
        decimals=decimal_literal or non_integer_value,
        source="auto",
    )


def uses_only(profile: OperationProfile, op: str) -> bool:
    """True iff ``op`` is the single operator flag set in the profile.

    Only the four operator flags participate; fractions/decimals are
    ignored. ``op`` must be one of them.
    """
    if op not in OPERATOR_FLAGS:
        raise ValueError(f"unknown operation {op!r}; expected one of {OPERATOR_FLAGS}")
    return all(getattr(profile, name) == (name == op) for name in OPERATOR_FLAGS)


def with_source(profile: OperationProfile, source: str) -> OperationProfile:
    return replace(profile, source=source)
