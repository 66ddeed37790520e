"""Prompt assembly and parsing of raw completions.

Prompts are built from exemplar Question/Solution pairs followed by one
instruction sentence. Three modes exist: the standard instruction, a
topic-conditioned variant, and an operation-controlled variant that names
both the operation and its operator symbol. Completions are expected to
answer with a "Question:" block followed by a "Solution:" block.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

from ..potlang import PotError, parse, profile_operations, uses_only
from .records import WordProblemRecord

MODES = ("standard", "topic", "operation")

STANDARD_INSTRUCTION = (
    "Write a grade school math word problem and Python function with a "
    "commented out step-by-step solution to solve the word problem."
)

TOPIC_INSTRUCTION = (
    "Write a grade school math word problem about {topic} and Python function "
    "with a commented out step-by-step solution to solve the word problem."
)

OPERATION_INSTRUCTION = (
    "Write a grade school math {operation} word problem about {topic} and "
    "Python function with a commented out step-by-step solution to solve the "
    "word problem. The question you write should only require {operation} to "
    "solve, meaning the solution should rely only on use of the {operator} "
    "operator."
)

OPERATOR_SYMBOLS = {
    "addition": "+",
    "subtraction": "-",
    "multiplication": "*",
    "division": "/",
}

DEFAULT_SHOT_COUNT = 8

_QUESTION_MARKER = re.compile(r"Question:", re.IGNORECASE)
_SOLUTION_MARKER = re.compile(r"Solution:", re.IGNORECASE)


class GenerationParseError(ValueError):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class NotEnoughExemplarsError(ValueError):
    pass


@dataclass(frozen=True)
class PromptSpec:
    mode: str
    shots: tuple[WordProblemRecord, ...]
    topic: str | None = None
    operation: str | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "topic" and not self.topic:
            raise ValueError("topic mode needs a topic")
        if self.mode == "operation":
            if not self.topic:
                raise ValueError("operation mode needs a topic")
            if self.operation not in OPERATOR_SYMBOLS:
                raise ValueError(f"operation must be one of {sorted(OPERATOR_SYMBOLS)}")
        if not self.shots:
            raise ValueError("at least one exemplar shot is required")


def instruction_for(mode: str, topic: str | None = None,
                    operation: str | None = None) -> str:
    if mode == "standard":
        return STANDARD_INSTRUCTION
    if mode == "topic":
        return TOPIC_INSTRUCTION.format(topic=topic)
    return OPERATION_INSTRUCTION.format(operation=operation, topic=topic,
                                        operator=OPERATOR_SYMBOLS[operation])


def render_pair(question: str, solution_source: str) -> str:
    """Canonical Question/Solution block; the inverse of parse_generation."""
    return f"Question: {question}\n\nSolution:\n{solution_source}"


def shot_passes_operation(record: WordProblemRecord, operation: str) -> bool:
    try:
        program = parse(record.solution_source)
    except PotError:
        return False
    return uses_only(profile_operations(program, record.question), operation)


def build_prompt(spec: PromptSpec) -> str:
    """Deterministically render the full few-shot prompt for a spec.

    In operation mode every shot must itself use only the requested
    operation; anything else would demonstrate the wrong behavior.
    """
    if spec.mode == "operation":
        for shot in spec.shots:
            if not shot_passes_operation(shot, spec.operation):
                raise NotEnoughExemplarsError(
                    f"exemplar {shot.id!r} does not use only {spec.operation}")
    blocks = [render_pair(shot.question, shot.solution_source.rstrip("\n"))
              for shot in spec.shots]
    blocks.append(instruction_for(spec.mode, spec.topic, spec.operation))
    return "\n\n".join(blocks) + "\n"


def prompt_hash(prompt: str) -> str:
    return "sha256:" + hashlib.sha256(prompt.encode("utf-8")).hexdigest()


def parse_generation(raw: str) -> tuple[str, str]:
    """Split one completion into (question, solution_source).

    Tolerates prose before the first "Question:" marker and cuts the
    solution at any follow-on "Question:" marker (models sometimes keep
    generating extra problems).
    """
    q_match = _QUESTION_MARKER.search(raw)
    if not q_match:
        raise GenerationParseError("missing_question_marker",
                                   "no 'Question:' marker in completion")
    s_match = _SOLUTION_MARKER.search(raw, q_match.end())
    if not s_match:
        raise GenerationParseError("missing_solution_marker",
                                   "no 'Solution:' marker after the question")
    question = raw[q_match.end():s_match.start()].strip()
    if not question:
        raise GenerationParseError("empty_question", "question text is empty")
    rest = raw[s_match.end():]
    next_q = _QUESTION_MARKER.search(rest)
    solution = rest[:next_q.start()] if next_q else rest
    return question, solution.strip() + "\n"
