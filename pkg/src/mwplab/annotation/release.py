"""Import of a released annotation dataset for replay.

Expected format: JSON lines, one labeled item per line:

    {"question": "...", "solution": "def solution(): ...",
     "model": "model-name", "topic": "dogs" | null,
     "solvable": true, "accurate": true, "appropriate": true,
     "mac": true,                      # optional; derived when absent
     "addition": true, ..., "decimals": false}   # optional human profile

Each line becomes a word-problem record plus a single-annotator adjudicated
verdict, and, when operation flags are present, one annotation record
carrying the human profile so downstream tables prefer it over automatic
profiling.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..gen.records import WordProblemRecord
from ..potlang import OPERATION_NAMES, OperationProfile
from .schema import AdjudicatedLabels, AnnotationRecord, TriState


def _tri(value: bool | None, solvable: bool) -> TriState:
    if not solvable or value is None:
        return TriState.NOT_APPLICABLE
    return TriState.YES if value else TriState.NO


def load_release_dataset(path: str | Path):
    """Returns (records, adjudicated, annotations)."""
    records: list[WordProblemRecord] = []
    verdicts: list[AdjudicatedLabels] = []
    annotations: list[AnnotationRecord] = []
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
            item_id = str(row.get("id", f"release-{line_no:06d}"))
            model = str(row.get("model", "unknown-model"))
            solvable = bool(row["solvable"])
            accurate = solvable and bool(row.get("accurate", False))
            appropriate = solvable and bool(row.get("appropriate", False))
            mac = bool(row.get("mac", solvable and accurate and appropriate))
        except (json.JSONDecodeError, KeyError, TypeError) as err:
            raise ValueError(f"{path}:{line_no}: bad release row: {err}") from err
        records.append(WordProblemRecord(
            id=item_id, model_id=model, topic=row.get("topic"),
            question=row["question"], solution_source=row.get("solution", ""),
        ))
        verdicts.append(AdjudicatedLabels(
            item_id=item_id, solvable=solvable, accurate=accurate,
            appropriate=appropriate, mac=mac, n_annotators=1,
            resolution="single", model_id=model,
        ))
        if any(flag in row for flag in OPERATION_NAMES):
            profile = OperationProfile(
                **{flag: bool(row.get(flag, False)) for flag in OPERATION_NAMES},
                source="human")
            annotations.append(AnnotationRecord(
                item_id=item_id, annotator_id="release",
                solvable=solvable,
                accurate=_tri(row.get("accurate"), solvable),
                appropriate=_tri(row.get("appropriate"), solvable),
                appropriateness_error=row.get("appropriateness_error"),
                operations=profile,
            ))
    return records, verdicts, annotations
