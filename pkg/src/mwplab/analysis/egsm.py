"""Export of the teacher-verified dataset (EGSM).

Only items whose adjudicated verdict meets all criteria are exported, after
question-level deduplication, as instruction-tuning records:

    {"instruction": <prompt sentence>, "input": "", "output":
     "Question: ...\\n\\nSolution:\\n..."}

one JSON object per line, ordered by item id so reruns are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..annotation import AdjudicatedLabels
from ..gen.prompts import instruction_for, render_pair
from ..gen.records import WordProblemRecord
from ..metrics import normalize_question


def egsm_records(records: list[WordProblemRecord],
                 adjudicated: list[AdjudicatedLabels]) -> list[dict]:
    mac_items = {v.item_id for v in adjudicated if v.mac}
    if not mac_items:
        raise ValueError("no items meet all criteria; nothing to export")
    by_id = {record.id: record for record in records}
    seen: set[str] = set()
    out = []
    for item_id in sorted(mac_items):
        record = by_id.get(item_id)
        if record is None:
            raise KeyError(f"adjudicated item {item_id!r} has no record")
        key = normalize_question(record.question)
        if key in seen:
            continue
        seen.add(key)
        mode = "topic" if record.topic else "standard"
        out.append({
            "instruction": instruction_for(mode, topic=record.topic),
            "input": "",
            "output": render_pair(record.question, record.solution_source.rstrip("\n")),
        })
    return out


def export_egsm(records: list[WordProblemRecord],
                adjudicated: list[AdjudicatedLabels],
                path: str | Path) -> int:
    """Write the export file; returns the number of records written."""
    rows = egsm_records(records, adjudicated)
    with Path(path).open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    return len(rows)
