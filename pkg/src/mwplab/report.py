"""Delimited outputs and figures for the scoring/report path.

CSV writers use fixed float formats so identical inputs produce identical
bytes. Figures render with the Agg backend straight to files; the reading
level distribution plot draws one histogram per model with a dotted mean
line, which is the shape used throughout the study write-ups.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .annotation import AgreementReport
from .analysis.logit import RegressionResult
from .metrics import CorpusStats, histogram
from .readability import analyze


def score_records(records) -> list[dict]:
    """Per-item readability rows; items without question text are skipped."""
    rows = []
    for record in records:
        if not record.question.strip():
            continue
        report = analyze(record.question)
        rows.append({
            "id": record.id,
            "model_id": record.model_id,
            "fkgl": report.fkgl,
            "token_length": report.token_length,
            "beyond_grade_8": report.beyond_grade_8,
        })
    return rows


def write_scores_csv(rows: list[dict], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "model_id", "fkgl", "token_length", "beyond_grade_8"])
        for row in rows:
            writer.writerow([row["id"], row["model_id"], f"{row['fkgl']:.6f}",
                             row["token_length"], int(row["beyond_grade_8"])])


def write_corpus_stats_csv(stats_by_model: dict[str, CorpusStats],
                           path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model_id", "n_raw", "n_dedup", "mean_length",
                         "sd_length", "mean_fkgl", "sd_fkgl"])
        for model, stats in sorted(stats_by_model.items()):
            writer.writerow([model, stats.n_raw, stats.n_dedup,
                             f"{stats.mean_length:.4f}", f"{stats.sd_length:.4f}",
                             f"{stats.mean_fkgl:.4f}", f"{stats.sd_fkgl:.4f}"])


def write_histogram_csv(values_by_model: dict[str, list[float]],
                        path: str | Path, bin_width: float = 1.0,
                        lo: float = -6.0, hi: float = 16.0) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model_id", "bin_left", "bin_right", "count"])
        for model, values in sorted(values_by_model.items()):
            edges, counts = histogram(values, bin_width, lo, hi)
            for left, right, count in zip(edges, edges[1:], counts):
                writer.writerow([model, f"{left:.4f}", f"{right:.4f}", count])


def render_fkgl_figure(values_by_model: dict[str, list[float]],
                       path: str | Path, bin_width: float = 1.0,
                       lo: float = -6.0, hi: float = 16.0) -> None:
    """Reading-level distributions, one panel-free overlay per model."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    fig, ax = plt.subplots(figsize=(8, 5))
    bins = np.arange(lo, hi + bin_width, bin_width)
    for model, values in sorted(values_by_model.items()):
        color = ax.hist(values, bins=bins, alpha=0.45, label=model,
                        edgecolor="white")[2][0].get_facecolor()
        mean = float(np.mean(values))
        ax.axvline(mean, linestyle=":", linewidth=1.5, color=color)
    ax.axvline(8.0, color="black", linewidth=1.0, linestyle="--", alpha=0.5)
    ax.set_xlabel("Flesch-Kincaid grade level")
    ax.set_ylabel("questions")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": "mwplab"})
    plt.close(fig)


def write_autoeval_csv(ppl_by_id: dict[str, float] | None,
                       bf1_by_id: dict[str, float] | None,
                       path: str | Path) -> None:
    """Per-item automatic metrics from externally supplied scores."""
    ids = sorted(set(ppl_by_id or {}) | set(bf1_by_id or {}))
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "ppl", "bertscore_f1"])
        for item_id in ids:
            ppl = ppl_by_id.get(item_id) if ppl_by_id else None
            bf1 = bf1_by_id.get(item_id) if bf1_by_id else None
            writer.writerow([item_id,
                             "" if ppl is None else f"{ppl:.6f}",
                             "" if bf1 is None else f"{bf1:.6f}"])


def write_agreement_csv(report: AgreementReport, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["criterion", "rate", "ci_half_width", "n_items", "method"])
        for criterion, rate in report.per_criterion.items():
            writer.writerow([criterion, f"{rate.rate:.6f}",
                             f"{rate.ci_half_width:.6f}", rate.n_items,
                             report.method])


def write_regression_csv(result: RegressionResult, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["predictor", "estimate", "se", "z", "p"])
        for name, c in result.coefficients.items():
            writer.writerow([name, f"{c.estimate:.6f}", f"{c.se:.6f}",
                             f"{c.z:.6f}", f"{c.p:.6f}"])
        writer.writerow([])
        writer.writerow(["log_likelihood", f"{result.log_likelihood:.6f}",
                         "iterations", result.iterations,
                         "converged" if result.converged else "not_converged"])
