"""HTTP API backing the annotation workflow.

Endpoints (JSON request/response):

    GET  /api/tasks/next?annotator=ID   next item for this annotator, or 204
    POST /api/labels                    submit one AnnotationRecord payload
    GET  /api/progress                  item/label counters
    GET  /api/export                    all accepted labels as JSON lines
    GET  /api/directions                direction texts for the labeling steps

Assignment order is deterministic: items with fewer existing labels first,
then ascending item id; items already at the target label depth or already
labeled by the requesting annotator are skipped. Items assigned to another
annotator but not yet submitted are deprioritized so concurrent requesters
receive distinct items whenever possible. Submission is idempotent: an
exact duplicate payload returns the previously stored acknowledgment.

When a shared token is configured, every /api request must carry it in an
``Authorization: Bearer <token>`` header.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from fastapi import Depends, FastAPI, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse, Response

from .annotation import (
    AnnotationRecord,
    DuplicateLabelError,
    InvariantViolation,
    LabelStore,
    UnknownItemError,
)
from .gen.records import WordProblemRecord
from .potlang import execute_source

DIRECTION_STEPS = ("solvability", "operations", "accuracy", "appropriateness",
                   "topic")


def load_directions(directory: str | Path | None = None) -> dict[str, str]:
    """Direction texts by step; falls back to the packaged defaults."""
    texts = {}
    for step in DIRECTION_STEPS:
        if directory is not None:
            path = Path(directory) / f"{step}.txt"
            texts[step] = path.read_text("utf-8").strip()
        else:
            texts[step] = (resources.files("mwplab.data.directions")
                           .joinpath(f"{step}.txt").read_text("utf-8").strip())
    return texts


def directions_version(texts: dict[str, str]) -> str:
    digest = hashlib.sha256(
        json.dumps(texts, sort_keys=True).encode("utf-8")).hexdigest()
    return digest[:12]


@dataclass
class AnnotationService:
    """State shared by the endpoint handlers."""

    items: dict[str, WordProblemRecord]
    store: LabelStore
    directions: dict[str, str]
    target_depth: int = 1
    api_token: str | None = None
    outstanding: dict[str, str] = field(default_factory=dict)  # item -> annotator
    lock: threading.Lock = field(default_factory=threading.Lock)

    def next_item_for(self, annotator_id: str) -> WordProblemRecord | None:
        with self.lock:
            counts = self.store.label_counts()
            done = self.store.items_labeled_by(annotator_id)
            assigned = self.outstanding
            # keep serving an assignment this annotator has not submitted yet
            for item_id, holder in assigned.items():
                if holder == annotator_id and item_id not in done:
                    return self.items[item_id]
            eligible = [item_id for item_id in self.store.item_ids
                        if item_id not in done and counts[item_id] < self.target_depth]
            if not eligible:
                return None
            eligible.sort(key=lambda item_id: (
                item_id in assigned,       # prefer items nobody is holding
                counts[item_id],
                item_id,
            ))
            chosen = eligible[0]
            self.outstanding[chosen] = annotator_id
            return self.items[chosen]

    def release(self, item_id: str) -> None:
        with self.lock:
            self.outstanding.pop(item_id, None)


def build_service(records: list[WordProblemRecord],
                  persist_path: str | Path | None = None,
                  directions_dir: str | Path | None = None,
                  target_depth: int = 1,
                  api_token: str | None = None) -> AnnotationService:
    return AnnotationService(
        items={record.id: record for record in records},
        store=LabelStore([record.id for record in records],
                         persist_path=persist_path),
        directions=load_directions(directions_dir),
        target_depth=target_depth,
        api_token=api_token,
    )


def create_app(service: AnnotationService,
               cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="word-problem annotation service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def check_auth(request: Request) -> None:
        if service.api_token is None:
            return
        header = request.headers.get("authorization", "")
        if header != f"Bearer {service.api_token}":
            raise HTTPException(status_code=401, detail="missing or bad token")

    @app.get("/api/tasks/next")
    def next_task(request: Request, annotator: str = Query(min_length=1)):
        check_auth(request)
        record = service.next_item_for(annotator)
        if record is None:
            return Response(status_code=204)
        outcome = record.exec or execute_source(record.solution_source)
        return {
            "item_id": record.id,
            "question": record.question,
            "solution_source": record.solution_source,
            "rendered_answer": outcome.answer if outcome.ok else "",
            "topic": record.topic,
            "directions_bundle_version": directions_version(service.directions),
        }

    @app.post("/api/labels")
    def submit(payload: dict, request: Request):
        check_auth(request)
        try:
            record = AnnotationRecord.from_dict(payload)
        except (KeyError, ValueError) as err:
            raise HTTPException(status_code=422, detail={
                "error": "invalid_label", "message": str(err)})
        try:
            service.store.submit(record)
        except UnknownItemError:
            raise HTTPException(status_code=404, detail={
                "error": "unknown_item", "message": record.item_id})
        except InvariantViolation as err:
            raise HTTPException(status_code=422, detail={
                "error": "invariant_violation", "message": str(err)})
        except DuplicateLabelError as err:
            prior = service.store.get(record.item_id, record.annotator_id)
            if prior == record:  # idempotent duplicate
                return {"status": "stored", "item_id": record.item_id,
                        "annotator_id": record.annotator_id, "duplicate": True}
            raise HTTPException(status_code=409, detail={
                "error": "duplicate_label", "message": str(err)})
        service.release(record.item_id)
        return {"status": "stored", "item_id": record.item_id,
                "annotator_id": record.annotator_id, "duplicate": False}

    @app.get("/api/progress")
    def progress(request: Request):
        check_auth(request)
        counts = service.store.label_counts()
        return {
            "items_total": len(counts),
            "items_fully_labeled": sum(
                1 for c in counts.values() if c >= service.target_depth),
            "target_depth": service.target_depth,
            "per_annotator_counts": service.store.annotator_counts(),
        }

    @app.get("/api/export")
    def export(request: Request):
        check_auth(request)
        lines = [json.dumps(record.as_dict(), ensure_ascii=False)
                 for record in service.store.all_labels()]
        return PlainTextResponse("\n".join(lines) + ("\n" if lines else ""),
                                 media_type="application/jsonl")

    @app.get("/api/directions")
    def directions(request: Request):
        check_auth(request)
        return {"version": directions_version(service.directions),
                "steps": service.directions}

    return app
