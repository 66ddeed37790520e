"""Study-level analyses: regressions, significance tests, summary tables,
and the instruction-dataset export."""

from __future__ import annotations

from .egsm import export_egsm
from .logit import (
    Coefficient,
    DesignMatrix,
    RegressionResult,
    SeparationWarning,
    SingularDesignError,
    fit_logistic,
    model_dummy_design,
    replay_items_from_counts,
)
from .stats import normal_cdf, two_proportion_test, two_sided_p
from .tables import (
    Cell,
    ItemView,
    StudyTable,
    accuracy_by_operation,
    appropriateness_error_table,
    build_item_views,
    controllability_eval,
    criteria_table,
    operation_table,
    to_csv_text,
    to_markdown_text,
)

__all__ = [
    "Cell", "Coefficient", "DesignMatrix", "ItemView", "RegressionResult",
    "SeparationWarning", "SingularDesignError", "StudyTable",
    "accuracy_by_operation", "appropriateness_error_table",
    "build_item_views", "controllability_eval", "criteria_table",
    "export_egsm", "fit_logistic", "model_dummy_design", "normal_cdf",
    "operation_table", "replay_items_from_counts", "to_csv_text",
    "to_markdown_text", "two_proportion_test", "two_sided_p",
]
