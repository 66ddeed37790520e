"""Inter-annotator agreement rates with Wald 95% intervals.

The default convention is item-level: an item with two or more annotators
agrees on a criterion iff every annotator assigned the identical value, and
the denominator is the number of multi-annotated items. A pairwise variant
(every unordered annotator pair counts separately) is available behind the
``method`` flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .schema import AnnotationRecord

Z_95 = 1.96

CRITERIA = ("solvability", "accuracy", "appropriateness", "all_three", "mac")


@dataclass(frozen=True)
class AgreementRate:
    rate: float
    ci_half_width: float
    n_items: int


@dataclass(frozen=True)
class AgreementReport:
    per_criterion: dict[str, AgreementRate]
    method: str

    def __getitem__(self, criterion: str) -> AgreementRate:
        return self.per_criterion[criterion]


def wald_half_width(rate: float, n: int) -> float:
    return Z_95 * math.sqrt(rate * (1.0 - rate) / n)


def _values(label: AnnotationRecord) -> dict[str, object]:
    return {
        "solvability": label.solvable,
        "accuracy": label.accurate,
        "appropriateness": label.appropriate,
        "all_three": (label.solvable, label.accurate, label.appropriate),
        "mac": label.mac,
    }


def agreement_report(labels: list[AnnotationRecord],
                     method: str = "item") -> AgreementReport:
    if method not in ("item", "pairwise"):
        raise ValueError("method must be 'item' or 'pairwise'")
    by_item: dict[str, list[AnnotationRecord]] = {}
    for label in labels:
        by_item.setdefault(label.item_id, []).append(label)
    multi = [group for group in by_item.values() if len(group) >= 2]
    if not multi:
        raise ValueError("no item has two or more annotators")

    agree: dict[str, int] = {c: 0 for c in CRITERIA}
    total = 0
    for group in multi:
        views = [_values(label) for label in group]
        if method == "item":
            total += 1
            for criterion in CRITERIA:
                if all(v[criterion] == views[0][criterion] for v in views):
                    agree[criterion] += 1
        else:
            for a, b in combinations(views, 2):
                total += 1
                for criterion in CRITERIA:
                    if a[criterion] == b[criterion]:
                        agree[criterion] += 1

    per_criterion = {}
    for criterion in CRITERIA:
        rate = agree[criterion] / total
        per_criterion[criterion] = AgreementRate(
            rate=rate, ci_half_width=wald_half_width(rate, total), n_items=total)
    return AgreementReport(per_criterion=per_criterion, method=method)
