"""End-to-end generation: prompt, complete, parse, execute, record.

Every request is fully determined by (seed, index): the per-request RNG
reseeds as seed * 1_000_003 + index, picks the topic (when a topic list is
used), then samples the exemplar shots. Records therefore merge
deterministically regardless of how many requests ran in parallel, and a
record's prompt can be rebuilt afterwards to verify its stored hash.
"""

from __future__ import annotations

import dataclasses
import datetime
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from ..potlang import ExecutionOutcome, execute_source
from .backend import CompletionBackend, SamplingConfig
from .prompts import (
    DEFAULT_SHOT_COUNT,
    GenerationParseError,
    NotEnoughExemplarsError,
    PromptSpec,
    build_prompt,
    parse_generation,
    prompt_hash,
    shot_passes_operation,
)
from .records import WordProblemRecord

_SEED_STRIDE = 1_000_003  # large odd prime keeps per-index streams apart

#: Base instant for deterministic record timestamps (index seconds added).
DETERMINISTIC_EPOCH = datetime.datetime(2000, 1, 1, tzinfo=datetime.timezone.utc)


@dataclass(frozen=True)
class GenerationPlan:
    """Static inputs shared by all requests of one generate run."""

    model_id: str
    pool: tuple[WordProblemRecord, ...]
    seed: int = 0
    shot_count: int = DEFAULT_SHOT_COUNT
    topic: str | None = None
    topics: tuple[str, ...] | None = None
    operation: str | None = None

    def __post_init__(self) -> None:
        if not self.pool:
            raise ValueError("exemplar pool is empty")
        if self.shot_count < 1:
            raise ValueError("shot_count must be at least 1")
        if self.operation and not (self.topic or self.topics):
            raise ValueError("operation-controlled prompts need a topic")

    def eligible_pool(self) -> list[WordProblemRecord]:
        if self.operation is None:
            return list(self.pool)
        eligible = [shot for shot in self.pool
                    if shot_passes_operation(shot, self.operation)]
        if len(eligible) < self.shot_count:
            raise NotEnoughExemplarsError(
                f"only {len(eligible)} exemplars use only {self.operation}; "
                f"{self.shot_count} shots requested")
        return eligible


def spec_for_index(plan: GenerationPlan, index: int) -> PromptSpec:
    """Resolve the prompt spec for request ``index`` (pure in plan, index)."""
    rng = random.Random(plan.seed * _SEED_STRIDE + index)
    topic = plan.topic
    if topic is None and plan.topics:
        topic = rng.choice(plan.topics)
    eligible = plan.eligible_pool()
    count = min(plan.shot_count, len(eligible))
    shots = tuple(rng.sample(eligible, count))
    if plan.operation:
        mode = "operation"
    elif topic is not None:
        mode = "topic"
    else:
        mode = "standard"
    return PromptSpec(mode=mode, shots=shots, topic=topic,
                      operation=plan.operation, seed=plan.seed)


def prompt_for_index(plan: GenerationPlan, index: int) -> str:
    return build_prompt(spec_for_index(plan, index))


def default_timestamp(index: int) -> str:
    instant = DETERMINISTIC_EPOCH + datetime.timedelta(seconds=index)
    return instant.strftime("%Y-%m-%dT%H:%M:%SZ")


def attach_execution(record: WordProblemRecord) -> WordProblemRecord:
    """Run the solution through the interpreter and stamp the outcome."""
    if record.exec is not None and record.exec.status != "ok":
        return record  # generation-level parse failures stay as they are
    return dataclasses.replace(record, exec=execute_source(record.solution_source))


def generate(plan: GenerationPlan, cfg: SamplingConfig, n: int,
             backend: CompletionBackend, parallelism: int = 1,
             timestamp: Callable[[int], str] = default_timestamp,
             ) -> list[WordProblemRecord]:
    """Issue ``n`` completion requests and return one record per request.

    Completions that fail to split into a question/solution pair are kept
    as records with an error status (they count against executable-code
    rates); their raw completion text is preserved in solution_source.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    specs = [spec_for_index(plan, i) for i in range(n)]
    prompts = [build_prompt(spec) for spec in specs]

    def one(index: int) -> str:
        return backend.complete(prompts[index], cfg, index)

    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            completions = list(pool.map(one, range(n)))
    else:
        completions = [one(i) for i in range(n)]

    records = []
    for index, (spec, prompt, completion) in enumerate(zip(specs, prompts, completions)):
        record_id = f"{plan.model_id or 'gen'}-s{plan.seed}-{index:05d}"
        try:
            question, solution = parse_generation(completion)
            outcome = execute_source(solution)
        except GenerationParseError as err:
            question, solution = "", completion
            outcome = ExecutionOutcome(status=err.kind, detail=str(err))
        records.append(WordProblemRecord(
            id=record_id,
            model_id=plan.model_id,
            topic=spec.topic,
            requested_operation=spec.operation,
            question=question,
            solution_source=solution,
            prompt_hash=prompt_hash(prompt),
            created_at=timestamp(index),
            exec=outcome,
        ))
    return records
