"""Prompt assembly, completion backends, and the generation pipeline."""

from __future__ import annotations

import json
from importlib import resources

from .backend import (
    API_KEY_ENV,
    AuthenticationError,
    BackendError,
    BackendRefusalError,
    CompletionBackend,
    HttpCompletionBackend,
    SamplingConfig,
    StubBackend,
    TransportError,
    make_backend,
)
from .config import PipelineConfig, load_config, parse_config_text
from .pipeline import (
    GenerationPlan,
    attach_execution,
    default_timestamp,
    generate,
    prompt_for_index,
    spec_for_index,
)
from .prompts import (
    DEFAULT_SHOT_COUNT,
    GenerationParseError,
    NotEnoughExemplarsError,
    OPERATOR_SYMBOLS,
    PromptSpec,
    STANDARD_INSTRUCTION,
    build_prompt,
    instruction_for,
    parse_generation,
    prompt_hash,
    render_pair,
    shot_passes_operation,
)
from .records import WordProblemRecord, load_records, save_records
from .topics import default_topics, load_topics


def sample_problem_records() -> list[WordProblemRecord]:
    """The packaged sample problems, usable as an offline exemplar pool."""
    text = resources.files("mwplab.data").joinpath("sample_problems.jsonl").read_text("utf-8")
    return [WordProblemRecord.from_dict(json.loads(line))
            for line in text.splitlines() if line.strip()]


__all__ = [
    "API_KEY_ENV", "AuthenticationError", "BackendError",
    "BackendRefusalError", "CompletionBackend", "DEFAULT_SHOT_COUNT",
    "GenerationParseError", "GenerationPlan", "HttpCompletionBackend",
    "NotEnoughExemplarsError", "OPERATOR_SYMBOLS", "PipelineConfig",
    "PromptSpec", "STANDARD_INSTRUCTION", "SamplingConfig", "StubBackend",
    "TransportError", "WordProblemRecord", "attach_execution",
    "build_prompt", "default_timestamp", "default_topics", "generate",
    "instruction_for", "load_config", "load_records", "load_topics",
    "make_backend", "parse_config_text", "parse_generation",
    "prompt_for_index", "prompt_hash", "render_pair",
    "sample_problem_records", "save_records", "spec_for_index",
    "shot_passes_operation",
]
