"""Word-problem records and their JSON-lines persistence."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..potlang import ExecutionOutcome


@dataclass(frozen=True)
class WordProblemRecord:
    """One generated question plus its solution source and provenance."""

    id: str
    model_id: str
    question: str
    solution_source: str
    topic: str | None = None
    requested_operation: str | None = None
    prompt_hash: str | None = None
    created_at: str | None = None
    exec: ExecutionOutcome | None = None

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "model_id": self.model_id,
            "topic": self.topic,
            "requested_operation": self.requested_operation,
            "question": self.question,
            "solution_source": self.solution_source,
            "prompt_hash": self.prompt_hash,
            "created_at": self.created_at,
            "exec": self.exec.as_dict() if self.exec else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WordProblemRecord":
        outcome = data.get("exec")
        return cls(
            id=str(data["id"]),
            model_id=data.get("model_id", ""),
            topic=data.get("topic"),
            requested_operation=data.get("requested_operation"),
            question=data.get("question", ""),
            solution_source=data.get("solution_source", ""),
            prompt_hash=data.get("prompt_hash"),
            created_at=data.get("created_at"),
            exec=ExecutionOutcome.from_dict(outcome) if outcome else None,
        )


def load_records(path: str | Path) -> list[WordProblemRecord]:
    records = []
    seen: set[str] = set()
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            record = WordProblemRecord.from_dict(json.loads(line))
        except (json.JSONDecodeError, KeyError) as err:
            raise ValueError(f"{path}:{line_no}: bad record: {err}") from err
        if record.id in seen:
            raise ValueError(f"{path}:{line_no}: duplicate record id {record.id!r}")
        seen.add(record.id)
        records.append(record)
    return records


def save_records(records: list[WordProblemRecord], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.as_dict(), ensure_ascii=False) + "\n")
