"""Annotation workflow: label schema, storage, adjudication, agreement."""

from __future__ import annotations

from .adjudicate import adjudicate, adjudicate_all
from .agreement import (
    CRITERIA,
    AgreementRate,
    AgreementReport,
    agreement_report,
    wald_half_width,
)
from .schema import (
    APPROPRIATENESS_ERRORS,
    AdjudicatedLabels,
    AnnotationRecord,
    InvariantViolation,
    TriState,
)
from .store import (
    DuplicateLabelError,
    LabelStore,
    UnknownItemError,
    load_adjudicated,
    load_labels,
    save_adjudicated,
    save_labels,
)

__all__ = [
    "APPROPRIATENESS_ERRORS", "AdjudicatedLabels", "AgreementRate",
    "AgreementReport", "AnnotationRecord", "CRITERIA", "DuplicateLabelError",
    "InvariantViolation", "LabelStore", "TriState", "UnknownItemError",
    "adjudicate", "adjudicate_all", "agreement_report", "load_adjudicated",
    "load_labels", "save_adjudicated", "save_labels", "wald_half_width",
]
