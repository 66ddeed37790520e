from __future__ import annotations

import json
import threading

import pytest
from fastapi.testclient import TestClient

from mwplab.gen import WordProblemRecord, sample_problem_records
from mwplab.service import build_service, create_app


def make_client(records=None, persist_path=None, target_depth=1, api_token=None):
    records = records if records is not None else sample_problem_records()
    service = build_service(records, persist_path=persist_path,
                            target_depth=target_depth, api_token=api_token)
    return TestClient(create_app(service)), service


def valid_payload(item_id, annotator="a1", **overrides):
    payload = {
        "item_id": item_id,
        "annotator_id": annotator,
        "solvable": "yes",
        "accurate": "yes",
        "appropriate": "yes",
        "appropriateness_error": None,
        "operations": {"addition": True},
        "topic_specific": "yes",
        "duration_seconds": 30.0,
    }
    payload.update(overrides)
    return payload


class TestNextTask:
    def test_lowest_id_first_on_fresh_store(self):
        client, _ = make_client()
        response = client.get("/api/tasks/next", params={"annotator": "a1"})
        assert response.status_code == 200
        body = response.json()
        assert body["item_id"] == "p001"
        assert "Superman" in body["question"]
        assert body["rendered_answer"] == "3900"
        assert body["directions_bundle_version"]

    def test_none_when_everything_labeled(self):
        records = sample_problem_records()[:2]
        client, _ = make_client(records)
        for record in records:
            client.post("/api/labels", json=valid_payload(record.id))
        response = client.get("/api/tasks/next", params={"annotator": "a1"})
        assert response.status_code == 204

    def test_never_reassigns_a_labeled_item(self):
        records = sample_problem_records()[:3]
        client, _ = make_client(records)
        seen = []
        for _ in range(3):
            body = client.get("/api/tasks/next", params={"annotator": "a1"}).json()
            seen.append(body["item_id"])
            client.post("/api/labels", json=valid_payload(body["item_id"]))
        assert len(set(seen)) == 3

    def test_multi_annotation_allows_shared_items(self):
        records = sample_problem_records()[:1]
        client, _ = make_client(records, target_depth=2)
        a = client.get("/api/tasks/next", params={"annotator": "a1"}).json()
        b = client.get("/api/tasks/next", params={"annotator": "a2"}).json()
        assert a["item_id"] == b["item_id"] == records[0].id

    def test_concurrent_requesters_get_distinct_items_when_possible(self):
        records = sample_problem_records()[:2]
        client, _ = make_client(records, target_depth=2)
        a = client.get("/api/tasks/next", params={"annotator": "a1"}).json()
        b = client.get("/api/tasks/next", params={"annotator": "a2"}).json()
        assert a["item_id"] != b["item_id"]

    def test_repolling_before_submit_returns_same_assignment(self):
        client, _ = make_client()
        first = client.get("/api/tasks/next", params={"annotator": "a1"}).json()
        second = client.get("/api/tasks/next", params={"annotator": "a1"}).json()
        assert first["item_id"] == second["item_id"]

    def test_fewest_labels_first(self):
        records = sample_problem_records()[:2]
        client, _ = make_client(records, target_depth=2)
        client.post("/api/labels", json=valid_payload("p001", annotator="a9"))
        body = client.get("/api/tasks/next", params={"annotator": "a1"}).json()
        assert body["item_id"] == "p002"


class TestSubmit:
    def test_valid_payload_stored(self):
        client, service = make_client()
        response = client.post("/api/labels", json=valid_payload("p001"))
        assert response.status_code == 200
        assert response.json()["duplicate"] is False
        assert len(service.store.all_labels()) == 1

    def test_idempotent_duplicate(self):
        client, service = make_client()
        payload = valid_payload("p001")
        first = client.post("/api/labels", json=payload)
        second = client.post("/api/labels", json=payload)
        assert second.status_code == 200
        assert second.json()["duplicate"] is True
        assert len(service.store.all_labels()) == 1

    def test_conflicting_resubmission_rejected(self):
        client, _ = make_client()
        client.post("/api/labels", json=valid_payload("p001"))
        response = client.post("/api/labels",
                               json=valid_payload("p001", accurate="no"))
        assert response.status_code == 409

    def test_invariant_violation_names_rule(self):
        client, _ = make_client()
        bad = valid_payload("p001", solvable="no", accurate="yes",
                            appropriate="na", operations=None)
        response = client.post("/api/labels", json=bad)
        assert response.status_code == 422
        assert "not-applicable" in response.json()["detail"]["message"]

    def test_unknown_item(self):
        client, _ = make_client()
        response = client.post("/api/labels", json=valid_payload("zzz"))
        assert response.status_code == 404

    def test_concurrent_duplicate_submissions_store_once(self):
        records = sample_problem_records()[:1]
        _, service = make_client(records)
        payload = valid_payload(records[0].id)
        from mwplab.annotation import AnnotationRecord, DuplicateLabelError
        record = AnnotationRecord.from_dict(payload)
        errors = []

        def submit():
            try:
                service.store.submit(record)
            except DuplicateLabelError:
                errors.append(1)

        threads = [threading.Thread(target=submit) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(service.store.all_labels()) == 1
        assert len(errors) == 7


class TestProgressAndExport:
    def test_empty_store(self):
        client, _ = make_client(sample_problem_records()[:2])
        body = client.get("/api/progress").json()
        assert body == {"items_total": 2, "items_fully_labeled": 0,
                        "target_depth": 1, "per_annotator_counts": {}}

    def test_counts_after_submission(self):
        client, _ = make_client(sample_problem_records()[:2])
        client.post("/api/labels", json=valid_payload("p001"))
        body = client.get("/api/progress").json()
        assert body["items_fully_labeled"] == 1
        assert body["per_annotator_counts"] == {"a1": 1}

    def test_export_round_trip(self, tmp_path):
        from mwplab.annotation import AnnotationRecord
        client, _ = make_client(sample_problem_records()[:2])
        client.post("/api/labels", json=valid_payload("p001"))
        client.post("/api/labels", json=valid_payload("p002", annotator="a2"))
        text = client.get("/api/export").text
        parsed = [AnnotationRecord.from_dict(json.loads(line))
                  for line in text.splitlines()]
        assert len(parsed) == 2
        assert parsed[0].item_id == "p001"

    def test_export_contains_exactly_accepted_records(self):
        client, _ = make_client(sample_problem_records()[:3])
        client.post("/api/labels", json=valid_payload("p001"))
        client.post("/api/labels", json=valid_payload("p001"))  # duplicate
        client.post("/api/labels", json=valid_payload("zzz"))   # rejected
        lines = client.get("/api/export").text.splitlines()
        assert len(lines) == 1


class TestDirectionsAndAuth:
    def test_directions_served(self):
        client, _ = make_client()
        body = client.get("/api/directions").json()
        assert set(body["steps"]) == {"solvability", "operations", "accuracy",
                                      "appropriateness", "topic"}
        assert "SOLVABLE" in body["steps"]["solvability"]

    def test_token_required_when_configured(self):
        client, _ = make_client(api_token="sekrit")
        assert client.get("/api/progress").status_code == 401
        ok = client.get("/api/progress",
                        headers={"Authorization": "Bearer sekrit"})
        assert ok.status_code == 200

    def test_persistence_survives_restart(self, tmp_path):
        path = tmp_path / "labels.jsonl"
        records = sample_problem_records()[:2]
        client, _ = make_client(records, persist_path=path)
        client.post("/api/labels", json=valid_payload("p001"))
        client2, _ = make_client(records, persist_path=path)
        body = client2.get("/api/progress").json()
        assert body["items_fully_labeled"] == 1
