"""Item- and corpus-level automatic metrics.

Proportion uncertainty uses the n-1 convention for standard errors,
sqrt(p(1-p)/(n-1)), which is what the reported study tables use; the 95%
interval half-width keeps the plain Wald form sqrt(p(1-p)/n). Perplexity
and BERTScore consume externally computed token log-probabilities and
embeddings; no scoring model runs in-process.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import readability
from .readability import Tokenizer, whitespace_tokenizer

Z_95 = 1.96

_WS_RUN = re.compile(r"\s+")


@dataclass(frozen=True)
class ProportionEstimate:
    successes: int
    n: int
    rate: float
    se: float
    ci95_half: float


@dataclass(frozen=True)
class CorpusStats:
    n_raw: int
    n_dedup: int
    mean_length: float
    sd_length: float
    mean_fkgl: float
    sd_fkgl: float


def proportion(successes: int, n: int) -> ProportionEstimate:
    if n < 2:
        raise ValueError("proportion needs n >= 2")
    if not 0 <= successes <= n:
        raise ValueError("successes must be between 0 and n")
    rate = successes / n
    spread = rate * (1.0 - rate)
    return ProportionEstimate(
        successes=successes,
        n=n,
        rate=rate,
        se=math.sqrt(spread / (n - 1)),
        ci95_half=Z_95 * math.sqrt(spread / n),
    )


def perplexity(token_logprobs: Sequence[float]) -> float:
    """exp of the mean negative natural-log token probability."""
    if len(token_logprobs) == 0:
        raise ValueError("perplexity needs at least one token log-probability")
    if any(lp > 0 for lp in token_logprobs):
        raise ValueError("log-probabilities cannot be positive")
    return math.exp(-sum(token_logprobs) / len(token_logprobs))


def bertscore(candidate_embeddings: Sequence[Sequence[float]],
              reference_embeddings: Sequence[Sequence[float]]) -> dict[str, float]:
    """Greedy max-cosine token matching.

    precision = mean over candidate tokens of the best cosine against any
    reference token, recall is symmetric, f1 is their harmonic mean. No IDF
    weighting.
    """
    cand = np.array(candidate_embeddings, dtype=float, copy=True)
    ref = np.array(reference_embeddings, dtype=float, copy=True)
    if cand.ndim != 2 or ref.ndim != 2 or cand.shape[0] == 0 or ref.shape[0] == 0:
        raise ValueError("both embedding lists must be non-empty 2-d arrays")
    if cand.shape[1] != ref.shape[1]:
        raise ValueError(f"dimension mismatch: {cand.shape[1]} vs {ref.shape[1]}")
    for mat, side in ((cand, "candidate"), (ref, "reference")):
        norms = np.linalg.norm(mat, axis=1)
        if np.any(norms == 0):
            raise ValueError(f"zero-norm vector in {side} embeddings")
        mat /= norms[:, None]
    sim = cand @ ref.T
    p = float(sim.max(axis=1).mean())
    r = float(sim.max(axis=0).mean())
    f1 = 0.0 if p + r == 0 else 2 * p * r / (p + r)
    return {"precision": p, "recall": r, "f1": f1}


def ec_mac_product(ec: ProportionEstimate, mac: ProportionEstimate) -> tuple[float, float]:
    """Share of items that both execute and meet all criteria, as the product
    of the two independent estimates; SE by the delta method
    sqrt(p2^2 v1 + p1^2 v2)."""
    rate = ec.rate * mac.rate
    se = math.sqrt(mac.rate**2 * ec.se**2 + ec.rate**2 * mac.se**2)
    return rate, se


def ec_metrics(records: Sequence, mac: ProportionEstimate) -> dict:
    """Executable-code share over records plus the combined EC*MaC share.

    Records may be dicts with an ``exec.status`` entry or objects with an
    ``exec`` outcome; a record counts as executable iff status == "ok".
    """
    if len(records) == 0:
        raise ValueError("no records")
    ok = sum(1 for r in records if _exec_status(r) == "ok")
    ec = proportion(ok, len(records))
    rate, se = ec_mac_product(ec, mac)
    return {"ec": ec, "ec_mac": rate, "ec_mac_se": se}


def _exec_status(record) -> str | None:
    if isinstance(record, dict):
        outcome = record.get("exec")
        if isinstance(outcome, dict):
            return outcome.get("status")
        return getattr(outcome, "status", None)
    outcome = getattr(record, "exec", None)
    return getattr(outcome, "status", None)


def load_logprobs(path) -> dict[str, list[float]]:
    """Scoring-backend output: JSON lines of {"id", "token_logprobs": [...]}."""
    import json
    from pathlib import Path

    out: dict[str, list[float]] = {}
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
            out[str(row["id"])] = [float(v) for v in row["token_logprobs"]]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
            raise ValueError(f"{path}:{line_no}: bad logprob row: {err}") from err
    return out


def load_embeddings(path) -> dict[str, list[list[float]]]:
    """Embedding-backend output: JSON lines of {"id", "vectors": [[...]]}."""
    import json
    from pathlib import Path

    out: dict[str, list[list[float]]] = {}
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
            out[str(row["id"])] = [[float(v) for v in vec]
                                   for vec in row["vectors"]]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
            raise ValueError(f"{path}:{line_no}: bad embedding row: {err}") from err
    return out


def corpus_bertscore_f1(candidates: dict[str, list[list[float]]],
                        references: dict[str, list[list[float]]],
                        ) -> dict[str, float]:
    """Per-item BERTScore F1 of each candidate against the pooled reference
    token set (all reference items concatenated)."""
    if not references:
        raise ValueError("empty reference embeddings")
    pooled: list[list[float]] = []
    for vectors in references.values():
        pooled.extend(vectors)
    return {item_id: bertscore(vectors, pooled)["f1"]
            for item_id, vectors in candidates.items()}


def normalize_question(text: str) -> str:
    """Whitespace-normalized, case-preserved form used for deduplication."""
    return _WS_RUN.sub(" ", text.strip())


def dedup_questions(questions: Iterable[str]) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for q in questions:
        key = normalize_question(q)
        if key not in seen:
            seen.add(key)
            out.append(q)
    return out


def corpus_stats(questions: Sequence[str],
                 tokenizer: Tokenizer = whitespace_tokenizer) -> CorpusStats:
    """Deduplicated corpus statistics: token length and reading level, with
    sample (n-1) standard deviations."""
    if len(questions) == 0:
        raise ValueError("empty corpus")
    unique = dedup_questions(questions)
    lengths = [readability.token_length(q, tokenizer) for q in unique]
    fkgls = [readability.fkgl(readability.analyze_text(q)) for q in unique]
    return CorpusStats(
        n_raw=len(questions),
        n_dedup=len(unique),
        mean_length=float(np.mean(lengths)),
        sd_length=float(np.std(lengths, ddof=1)) if len(unique) > 1 else 0.0,
        mean_fkgl=float(np.mean(fkgls)),
        sd_fkgl=float(np.std(fkgls, ddof=1)) if len(unique) > 1 else 0.0,
    )


def histogram(values: Sequence[float], bin_width: float,
              lo: float, hi: float) -> tuple[list[float], list[int]]:
    """Left-closed right-open bins covering [lo, hi); values outside the
    range are dropped. Returns (edges, counts) with len(edges) == len(counts)+1."""
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    if len(values) == 0:
        raise ValueError("no values")
    if hi <= lo:
        raise ValueError("empty range")
    n_bins = math.ceil((hi - lo) / bin_width)
    edges = [lo + i * bin_width for i in range(n_bins + 1)]
    counts = [0] * n_bins
    for v in values:
        if lo <= v < hi:
            idx = min(int((v - lo) / bin_width), n_bins - 1)
            counts[idx] += 1
    return edges, counts
