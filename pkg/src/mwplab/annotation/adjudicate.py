"""Disagreement resolution.

Two annotators who disagree on a criterion resolve to "does not have the
criterion" (equivalently, the AND of their votes). Three annotators resolve
by majority. Not-applicable votes count as negative so that an item judged
unsolvable by an annotator can never contribute toward meeting all
criteria.
"""

from __future__ import annotations

from .schema import AdjudicatedLabels, AnnotationRecord, TriState


def _resolve(votes: list[bool]) -> bool:
    if len(votes) == 1:
        return votes[0]
    if len(votes) == 2:
        return votes[0] and votes[1]
    return sum(votes) >= 2


def adjudicate(labels: list[AnnotationRecord],
               model_id: str | None = None) -> AdjudicatedLabels:
    """Resolve 1-3 labels for a single item into one verdict."""
    if not labels:
        raise ValueError("no labels to adjudicate")
    if len(labels) > 3:
        raise ValueError("at most three annotators per item are supported")
    item_ids = {label.item_id for label in labels}
    if len(item_ids) != 1:
        raise ValueError(f"labels span multiple items: {sorted(item_ids)}")
    annotators = {label.annotator_id for label in labels}
    if len(annotators) != len(labels):
        raise ValueError("duplicate annotator in label list")

    ordered = sorted(labels, key=lambda label: label.annotator_id)
    solvable_votes = [label.solvable for label in ordered]
    accurate_votes = [label.accurate.as_bool for label in ordered]
    appropriate_votes = [label.appropriate.as_bool for label in ordered]
    topic_votes = [label.topic_specific.as_bool for label in ordered]

    solvable = _resolve(solvable_votes)
    accurate = _resolve(accurate_votes)
    appropriate = _resolve(appropriate_votes)
    topic_specific = (_resolve(topic_votes)
                      if any(label.topic_specific is not TriState.NOT_APPLICABLE
                             for label in ordered) else None)

    if len(ordered) == 1:
        resolution = "single"
    else:
        identical = all(
            (label.solvable, label.accurate, label.appropriate)
            == (ordered[0].solvable, ordered[0].accurate, ordered[0].appropriate)
            for label in ordered
        )
        if identical:
            resolution = "unanimous"
        elif len(ordered) == 2:
            resolution = "negative_on_disagreement"
        else:
            resolution = "majority"

    return AdjudicatedLabels(
        item_id=ordered[0].item_id,
        solvable=solvable,
        accurate=accurate,
        appropriate=appropriate,
        mac=solvable and accurate and appropriate,
        n_annotators=len(ordered),
        resolution=resolution,
        topic_specific=topic_specific,
        model_id=model_id,
    )


def adjudicate_all(labels: list[AnnotationRecord],
                   model_ids: dict[str, str] | None = None) -> list[AdjudicatedLabels]:
    """Group labels by item and adjudicate each; output ordered by item_id."""
    by_item: dict[str, list[AnnotationRecord]] = {}
    for label in labels:
        by_item.setdefault(label.item_id, []).append(label)
    model_ids = model_ids or {}
    return [adjudicate(group, model_id=model_ids.get(item_id))
            for item_id, group in sorted(by_item.items())]
