from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make test helpers importable


# Hand-derived answers for the packaged sample problems, in file order.
SAMPLE_ANSWERS = {
    "p001": "3900",
    "p002": "7",
    "p003": "108",
    "p004": "300",
    "p005": "61",
    "p006": "120",
    "p007": "12300",
    "p008": "50",
    "p009": "30",
    "p010": "10",
    "p011": "90",
    "p012": "60",
    "p013": "30000",
}


@pytest.fixture(scope="session")
def sample_problems() -> list[dict]:
    text = resources.files("mwplab.data").joinpath("sample_problems.jsonl").read_text("utf-8")
    return [json.loads(line) for line in text.splitlines() if line.strip()]
