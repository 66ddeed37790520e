"""Persistent label store: single writer, many readers.

Labels append to a JSON-lines file as they are accepted, so a crashed
session loses nothing; reads work on consistent snapshots taken under the
same lock that serializes writes.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from .schema import AdjudicatedLabels, AnnotationRecord


class UnknownItemError(KeyError):
    pass


class DuplicateLabelError(ValueError):
    pass


def load_labels(path: str | Path) -> list[AnnotationRecord]:
    records = []
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            records.append(AnnotationRecord.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as err:
            raise ValueError(f"{path}:{line_no}: bad label record: {err}") from err
    return records


def save_labels(records: list[AnnotationRecord], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.as_dict(), ensure_ascii=False) + "\n")


def load_adjudicated(path: str | Path) -> list[AdjudicatedLabels]:
    verdicts = []
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            verdicts.append(AdjudicatedLabels.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as err:
            raise ValueError(f"{path}:{line_no}: bad adjudicated record: {err}") from err
    return verdicts


def save_adjudicated(verdicts: list[AdjudicatedLabels], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for verdict in verdicts:
            fh.write(json.dumps(verdict.as_dict(), ensure_ascii=False) + "\n")


class LabelStore:
    """In-memory label store over a fixed item set, optionally backed by an
    append-only JSONL file."""

    def __init__(self, item_ids: list[str], persist_path: str | Path | None = None):
        self._item_ids = list(dict.fromkeys(item_ids))
        self._item_set = set(self._item_ids)
        self._labels: dict[tuple[str, str], AnnotationRecord] = {}
        self._lock = threading.Lock()
        self._persist_path = Path(persist_path) if persist_path else None
        if self._persist_path and self._persist_path.exists():
            for record in load_labels(self._persist_path):
                self._labels[(record.item_id, record.annotator_id)] = record

    @property
    def item_ids(self) -> list[str]:
        return list(self._item_ids)

    def submit(self, record: AnnotationRecord) -> AnnotationRecord:
        """Validate and persist one label atomically.

        Raises UnknownItemError for items outside the store and
        DuplicateLabelError when this annotator already labeled the item
        (including an identical resubmission; idempotent handling is the
        caller's policy, via ``get``).
        """
        record.validate()
        if record.item_id not in self._item_set:
            raise UnknownItemError(record.item_id)
        key = (record.item_id, record.annotator_id)
        with self._lock:
            if key in self._labels:
                raise DuplicateLabelError(
                    f"annotator {record.annotator_id!r} already labeled {record.item_id!r}")
            self._labels[key] = record
            if self._persist_path:
                with self._persist_path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps(record.as_dict(), ensure_ascii=False) + "\n")
                    fh.flush()
        return record

    def get(self, item_id: str, annotator_id: str) -> AnnotationRecord | None:
        with self._lock:
            return self._labels.get((item_id, annotator_id))

    def all_labels(self) -> list[AnnotationRecord]:
        with self._lock:
            return sorted(self._labels.values(),
                          key=lambda r: (r.item_id, r.annotator_id))

    def labels_for_item(self, item_id: str) -> list[AnnotationRecord]:
        with self._lock:
            return sorted((r for r in self._labels.values() if r.item_id == item_id),
                          key=lambda r: r.annotator_id)

    def label_counts(self) -> dict[str, int]:
        """Labels per item, zero-filled for unlabeled items."""
        with self._lock:
            counts = {item_id: 0 for item_id in self._item_ids}
            for item_id, _ in self._labels:
                counts[item_id] += 1
            return counts

    def annotator_counts(self) -> dict[str, int]:
        with self._lock:
            counts: dict[str, int] = {}
            for _, annotator_id in self._labels:
                counts[annotator_id] = counts.get(annotator_id, 0) + 1
            return dict(sorted(counts.items()))

    def items_labeled_by(self, annotator_id: str) -> set[str]:
        with self._lock:
            return {item for item, annotator in self._labels
                    if annotator == annotator_id}
