"""Label schema for the annotation workflow.

One AnnotationRecord is one annotator's judgment of one item. Conditional
fields are enforced at the boundary: an unsolvable item cannot be judged for
accuracy or appropriateness (those become not-applicable), and a "not
appropriate" verdict must name exactly one primary error category.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..potlang import OperationProfile


class TriState(str, enum.Enum):
    YES = "yes"
    NO = "no"
    NOT_APPLICABLE = "na"

    @property
    def as_bool(self) -> bool:
        """Aggregation view: only an explicit yes counts as true."""
        return self is TriState.YES


#: Primary reasons an item can fail appropriateness (single select).
APPROPRIATENESS_ERRORS = (
    "strange_unrealistic",
    "too_hard",
    "harmful_content",
    "grammar_syntax",
    "no_operations",
)

RESOLUTIONS = ("single", "unanimous", "negative_on_disagreement", "majority")


class InvariantViolation(ValueError):
    """A label violates a conditional-field rule."""


@dataclass(frozen=True)
class AnnotationRecord:
    item_id: str
    annotator_id: str
    solvable: bool
    accurate: TriState
    appropriate: TriState
    appropriateness_error: str | None = None
    operations: OperationProfile | None = None
    topic_specific: TriState = TriState.NOT_APPLICABLE
    duration_seconds: float | None = None

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if not self.item_id or not self.annotator_id:
            raise InvariantViolation("item_id and annotator_id are required")
        if not self.solvable:
            if self.accurate is not TriState.NOT_APPLICABLE:
                raise InvariantViolation(
                    "accuracy must be not-applicable when the item is unsolvable")
            if self.appropriate is not TriState.NOT_APPLICABLE:
                raise InvariantViolation(
                    "appropriateness must be not-applicable when the item is unsolvable")
        if self.appropriate is TriState.NO:
            if self.appropriateness_error is None:
                raise InvariantViolation(
                    "an inappropriate item needs an appropriateness_error category")
        elif self.appropriateness_error is not None:
            raise InvariantViolation(
                "appropriateness_error is only allowed when appropriate == no")
        if (self.appropriateness_error is not None
                and self.appropriateness_error not in APPROPRIATENESS_ERRORS):
            raise InvariantViolation(
                f"unknown appropriateness_error {self.appropriateness_error!r}")
        if self.operations is not None and self.operations.source != "human":
            raise InvariantViolation("annotator-supplied profiles must have source='human'")

    @property
    def mac(self) -> bool:
        """This annotator's meets-all-criteria verdict."""
        return (self.solvable and self.accurate.as_bool and self.appropriate.as_bool)

    def as_dict(self) -> dict:
        return {
            "item_id": self.item_id,
            "annotator_id": self.annotator_id,
            "solvable": "yes" if self.solvable else "no",
            "accurate": self.accurate.value,
            "appropriate": self.appropriate.value,
            "appropriateness_error": self.appropriateness_error,
            "operations": self.operations.as_dict() if self.operations else None,
            "topic_specific": self.topic_specific.value,
            "duration_seconds": self.duration_seconds,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnnotationRecord":
        operations = data.get("operations")
        return cls(
            item_id=data["item_id"],
            annotator_id=data["annotator_id"],
            solvable=data["solvable"] in (True, "yes"),
            accurate=TriState(data.get("accurate", "na")),
            appropriate=TriState(data.get("appropriate", "na")),
            appropriateness_error=data.get("appropriateness_error"),
            operations=OperationProfile.from_dict(operations) if operations else None,
            topic_specific=TriState(data.get("topic_specific", "na")),
            duration_seconds=data.get("duration_seconds"),
        )


@dataclass(frozen=True)
class AdjudicatedLabels:
    """One item's resolved verdict across its annotators."""

    item_id: str
    solvable: bool
    accurate: bool
    appropriate: bool
    mac: bool
    n_annotators: int
    resolution: str
    topic_specific: bool | None = None
    model_id: str | None = None

    def __post_init__(self) -> None:
        if self.resolution not in RESOLUTIONS:
            raise ValueError(f"unknown resolution {self.resolution!r}")
        if self.mac != (self.solvable and self.accurate and self.appropriate):
            raise ValueError("mac must equal solvable AND accurate AND appropriate")
        if self.n_annotators < 1:
            raise ValueError("n_annotators must be at least 1")

    def as_dict(self) -> dict:
        return {
            "item_id": self.item_id,
            "model_id": self.model_id,
            "solvable": self.solvable,
            "accurate": self.accurate,
            "appropriate": self.appropriate,
            "mac": self.mac,
            "topic_specific": self.topic_specific,
            "n_annotators": self.n_annotators,
            "resolution": self.resolution,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AdjudicatedLabels":
        return cls(
            item_id=data["item_id"],
            solvable=bool(data["solvable"]),
            accurate=bool(data["accurate"]),
            appropriate=bool(data["appropriate"]),
            mac=bool(data["mac"]),
            n_annotators=int(data["n_annotators"]),
            resolution=data["resolution"],
            topic_specific=data.get("topic_specific"),
            model_id=data.get("model_id"),
        )
