"""Study tables over adjudicated records.

Every builder takes joined ItemViews (record + verdict + operation profile)
so the table arithmetic stays independent of where labels came from. Cells
hold raw values; empty cells stay None rather than fabricating a 0% rate
for an operation no question used.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..annotation import AdjudicatedLabels, AnnotationRecord
from ..metrics import ProportionEstimate, ec_mac_product, proportion
from ..potlang import (
    OPERATION_NAMES,
    OPERATOR_FLAGS,
    OperationProfile,
    PotError,
    parse,
    profile_operations,
    uses_only,
)
from ..annotation.schema import APPROPRIATENESS_ERRORS, TriState
from .stats import two_proportion_test


@dataclass(frozen=True)
class Cell:
    value: float | None
    uncertainty: float | None = None
    flag: str | None = None


@dataclass
class StudyTable:
    kind: str
    columns: list[str]
    rows: dict[str, dict[str, Cell]] = field(default_factory=dict)

    def cell(self, row: str, column: str) -> Cell:
        return self.rows[row][column]

    def value(self, row: str, column: str) -> float | None:
        return self.rows[row][column].value


@dataclass(frozen=True)
class ItemView:
    """One item joined across records, adjudication, and profiling."""

    item_id: str
    model_id: str
    question: str
    solvable: bool
    accurate: bool
    appropriate: bool
    mac: bool
    profile: OperationProfile | None = None
    topic_specific: bool | None = None
    requested_operation: str | None = None
    appropriateness_error: str | None = None
    exec_ok: bool | None = None


def merge_human_profiles(profiles: list[OperationProfile]) -> OperationProfile:
    """Per-flag majority across annotators; ties keep the flag set."""
    votes = {name: 0 for name in OPERATION_NAMES}
    for profile in profiles:
        for name in OPERATION_NAMES:
            if getattr(profile, name):
                votes[name] += 1
    half = len(profiles) / 2
    return OperationProfile(**{name: votes[name] >= half for name in OPERATION_NAMES},
                            source="human")


def auto_profile(record) -> OperationProfile | None:
    try:
        program = parse(record.solution_source)
    except PotError:
        return None
    return profile_operations(program, record.question)


def _error_category(labels: list[AnnotationRecord]) -> str | None:
    categories = [label.appropriateness_error for label in labels
                  if label.appropriateness_error]
    if not categories:
        return None
    counts = Counter(categories)
    best = max(counts.values())
    # deterministic tie break: canonical category order
    return next(c for c in APPROPRIATENESS_ERRORS if counts.get(c, 0) == best)


def build_item_views(records, adjudicated: list[AdjudicatedLabels],
                     annotations: list[AnnotationRecord] | None = None,
                     ) -> list[ItemView]:
    """Join records with verdicts; human profiles override the auto ones."""
    by_record = {record.id: record for record in records}
    labels_by_item: dict[str, list[AnnotationRecord]] = {}
    for label in annotations or []:
        labels_by_item.setdefault(label.item_id, []).append(label)

    views = []
    for verdict in sorted(adjudicated, key=lambda v: v.item_id):
        record = by_record.get(verdict.item_id)
        if record is None:
            raise KeyError(f"adjudicated item {verdict.item_id!r} has no record")
        item_labels = labels_by_item.get(verdict.item_id, [])
        human = [label.operations for label in item_labels if label.operations]
        profile = merge_human_profiles(human) if human else auto_profile(record)
        views.append(ItemView(
            item_id=verdict.item_id,
            model_id=verdict.model_id or record.model_id,
            question=record.question,
            solvable=verdict.solvable,
            accurate=verdict.accurate,
            appropriate=verdict.appropriate,
            mac=verdict.mac,
            profile=profile,
            topic_specific=verdict.topic_specific,
            requested_operation=record.requested_operation,
            appropriateness_error=_error_category(item_labels),
            exec_ok=record.exec.ok if record.exec else None,
        ))
    return views


def _models(views: list[ItemView]) -> list[str]:
    return sorted({view.model_id for view in views})


def _share(flagged: int, total: int) -> float:
    return 100.0 * flagged / total


def operation_table(views: list[ItemView]) -> StudyTable:
    """Per model: share of solvable questions using each operation, the
    no-operation share, the same shares over MaC questions, and the mean
    distinct operation count over MaC questions."""
    columns = ([f"solvable_{name}" for name in OPERATION_NAMES]
               + ["solvable_no_ops"]
               + [f"mac_{name}" for name in OPERATION_NAMES]
               + ["mac_total_ops"])
    table = StudyTable(kind="operations", columns=columns)
    for model in _models(views):
        solvable = [v for v in views
                    if v.model_id == model and v.solvable and v.profile]
        if not solvable:
            raise ValueError(f"model {model!r} has no solvable questions")
        mac = [v for v in solvable if v.mac]
        row: dict[str, Cell] = {}
        for name in OPERATION_NAMES:
            row[f"solvable_{name}"] = Cell(_share(
                sum(getattr(v.profile, name) for v in solvable), len(solvable)))
            row[f"mac_{name}"] = Cell(
                _share(sum(getattr(v.profile, name) for v in mac), len(mac))
                if mac else None)
        row["solvable_no_ops"] = Cell(_share(
            sum(v.profile.no_operations for v in solvable), len(solvable)))
        row["mac_total_ops"] = Cell(
            sum(v.profile.distinct_count for v in mac) / len(mac) if mac else None)
        table.rows[model] = row
    return table


def criteria_table(views: list[ItemView]) -> StudyTable:
    """Per model: solvability, accuracy, appropriateness, MaC, and topic
    specificity rates with n-1 standard errors, executable-code share, and
    the EC*MaC product. Accuracy and appropriateness are rated over
    solvable questions only."""
    columns = ["solvable", "accurate", "appropriate", "mac", "topic_specific",
               "ec", "ec_mac"]
    table = StudyTable(kind="criteria", columns=columns)
    for model in _models(views):
        mine = [v for v in views if v.model_id == model]
        solvable = [v for v in mine if v.solvable]
        row: dict[str, Cell] = {}

        def pct(est: ProportionEstimate) -> Cell:
            return Cell(100.0 * est.rate, 100.0 * est.se)

        solv = proportion(len(solvable), len(mine))
        row["solvable"] = pct(solv)
        if len(solvable) >= 2:
            row["accurate"] = pct(proportion(sum(v.accurate for v in solvable),
                                             len(solvable)))
            row["appropriate"] = pct(proportion(sum(v.appropriate for v in solvable),
                                                len(solvable)))
        else:
            row["accurate"] = row["appropriate"] = Cell(None)
        mac = proportion(sum(v.mac for v in mine), len(mine))
        row["mac"] = pct(mac)
        with_topic = [v for v in mine if v.topic_specific is not None]
        row["topic_specific"] = (pct(proportion(sum(v.topic_specific for v in with_topic),
                                                len(with_topic)))
                                 if len(with_topic) >= 2 else Cell(None))
        with_exec = [v for v in mine if v.exec_ok is not None]
        if len(with_exec) >= 2:
            ec = proportion(sum(v.exec_ok for v in with_exec), len(with_exec))
            rate, se = ec_mac_product(ec, mac)
            row["ec"] = pct(ec)
            row["ec_mac"] = Cell(100.0 * rate, 100.0 * se)
        else:
            row["ec"] = row["ec_mac"] = Cell(None)
        table.rows[model] = row
    return table


def accuracy_by_operation(views: list[ItemView]) -> StudyTable:
    """Accuracy among solvable questions using each operation; a model is
    flagged when its best and worst operation accuracies differ at p<0.05
    (pooled two-proportion test)."""
    columns = list(OPERATION_NAMES) + ["max_min_significant"]
    table = StudyTable(kind="accuracy_by_op", columns=columns)
    for model in _models(views):
        solvable = [v for v in views
                    if v.model_id == model and v.solvable and v.profile]
        row: dict[str, Cell] = {}
        cells: list[tuple[int, int]] = []
        for name in OPERATION_NAMES:
            using = [v for v in solvable if getattr(v.profile, name)]
            if not using:
                row[name] = Cell(None)  # never rendered as 0%
                continue
            accurate = sum(v.accurate for v in using)
            row[name] = Cell(_share(accurate, len(using)))
            cells.append((accurate, len(using)))
        significant = None
        if len(cells) >= 2:
            best = max(cells, key=lambda c: c[0] / c[1])
            worst = min(cells, key=lambda c: c[0] / c[1])
            if best[0] / best[1] > worst[0] / worst[1]:
                try:
                    result = two_proportion_test(best[0], best[1], worst[0], worst[1])
                    significant = result["p"] < 0.05
                except ValueError:
                    significant = None
        row["max_min_significant"] = Cell(
            None if significant is None else float(significant),
            flag="*" if significant else None)
        table.rows[model] = row
    return table


def appropriateness_error_table(views: list[ItemView]) -> StudyTable:
    """Distribution of primary error categories over each model's
    inappropriate (but solvable) questions; rows sum to 100 up to rounding."""
    table = StudyTable(kind="appropriateness_errors",
                       columns=list(APPROPRIATENESS_ERRORS))
    for model in _models(views):
        bad = [v for v in views
               if v.model_id == model and v.solvable and not v.appropriate
               and v.appropriateness_error]
        if not bad:
            table.rows[model] = {c: Cell(None) for c in APPROPRIATENESS_ERRORS}
            continue
        counts = Counter(v.appropriateness_error for v in bad)
        table.rows[model] = {c: Cell(_share(counts.get(c, 0), len(bad)))
                             for c in APPROPRIATENESS_ERRORS}
    return table


def controllability_eval(prompted: list[ItemView],
                         baseline: list[ItemView]) -> StudyTable:
    """Share of operation-prompted generations that use only the requested
    operator, against how often unprompted generations are single-operator."""
    table = StudyTable(kind="controllability",
                       columns=list(OPERATOR_FLAGS))
    prompted_row: dict[str, Cell] = {}
    for op in OPERATOR_FLAGS:
        asked = [v for v in prompted if v.requested_operation == op]
        if not asked:
            raise ValueError(f"no prompted records for {op}")
        hits = sum(1 for v in asked if v.profile and uses_only(v.profile, op))
        prompted_row[op] = Cell(_share(hits, len(asked)))
    baseline_row: dict[str, Cell] = {}
    for op in OPERATOR_FLAGS:
        hits = sum(1 for v in baseline if v.profile and uses_only(v.profile, op))
        baseline_row[op] = Cell(_share(hits, len(baseline)) if baseline else None)
    table.rows["prompted"] = prompted_row
    table.rows["unprompted"] = baseline_row
    return table


def _format_value(value: float | None) -> str:
    if value is None:
        return ""
    if value == int(value):
        return f"{value:.2f}"
    return f"{value:.4g}" if abs(value) < 0.1 else f"{value:.2f}"


def to_csv_text(table: StudyTable) -> str:
    lines = [",".join(["row"] + table.columns)]
    for row_name, row in table.rows.items():
        cells = []
        for column in table.columns:
            cell = row[column]
            text = _format_value(cell.value)
            if cell.uncertainty is not None and text:
                text += f" ({cell.uncertainty:.2f})"
            if cell.flag:
                text += cell.flag
            cells.append(f'"{text}"' if ("," in text or '"' in text) else text)
        lines.append(",".join([row_name] + cells))
    return "\n".join(lines) + "\n"


def to_markdown_text(table: StudyTable) -> str:
    header = "| row | " + " | ".join(table.columns) + " |"
    rule = "|" + "---|" * (len(table.columns) + 1)
    lines = [header, rule]
    for row_name, row in table.rows.items():
        cells = []
        for column in table.columns:
            cell = row[column]
            text = _format_value(cell.value)
            if cell.uncertainty is not None and text:
                text += f" ({cell.uncertainty:.2f})"
            if cell.flag:
                text += cell.flag
            cells.append(text)
        lines.append("| " + " | ".join([row_name] + cells) + " |")
    return "\n".join(lines) + "\n"
