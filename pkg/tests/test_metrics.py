from __future__ import annotations

import math
import random

import pytest

from mwplab.metrics import (
    CorpusStats,
    bertscore,
    corpus_stats,
    dedup_questions,
    ec_mac_product,
    ec_metrics,
    histogram,
    normalize_question,
    perplexity,
    proportion,
)


class TestProportion:
    def test_study_table_cells(self):
        est = proportion(223, 250)
        assert est.rate == pytest.approx(0.892)
        assert est.se == pytest.approx(0.0197, abs=5e-5)
        est = proportion(187, 250)
        assert est.rate == pytest.approx(0.748)
        assert est.se == pytest.approx(0.0275, abs=5e-5)

    def test_degenerate_zero(self):
        est = proportion(0, 10)
        assert est.rate == 0 and est.se == 0 and est.ci95_half == 0

    def test_ci_uses_plain_n(self):
        est = proportion(846, 1000)
        assert est.ci95_half == pytest.approx(1.96 * math.sqrt(0.846 * 0.154 / 1000))

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            proportion(1, 1)

    def test_bad_successes_rejected(self):
        with pytest.raises(ValueError):
            proportion(11, 10)

    def test_se_and_ci_shrink_with_n(self):
        rates = [(50, 100), (500, 1000), (5000, 10000)]
        estimates = [proportion(s, n) for s, n in rates]
        ses = [e.se for e in estimates]
        cis = [e.ci95_half for e in estimates]
        assert ses == sorted(ses, reverse=True)
        assert cis == sorted(cis, reverse=True)


class TestPerplexity:
    def test_uniform_surprisal(self):
        assert perplexity([-1.0, -1.0, -1.0]) == pytest.approx(math.e)

    def test_certain_tokens(self):
        assert perplexity([0.0, 0.0]) == 1.0

    def test_hand_mean(self):
        assert perplexity([-0.5, -1.5]) == pytest.approx(math.e)

    def test_at_least_one(self):
        assert perplexity([-0.2, -3.0]) >= 1.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            perplexity([])

    def test_positive_logprob_rejected(self):
        with pytest.raises(ValueError):
            perplexity([-1.0, 0.1])


class TestBertScore:
    def test_identical_lists(self):
        vecs = [[1.0, 2.0], [3.0, -1.0]]
        scores = bertscore(vecs, vecs)
        assert scores["precision"] == pytest.approx(1.0)
        assert scores["recall"] == pytest.approx(1.0)
        assert scores["f1"] == pytest.approx(1.0)

    def test_orthogonal(self):
        scores = bertscore([[1.0, 0.0]], [[0.0, 1.0]])
        assert scores["f1"] == pytest.approx(0.0)

    def test_candidate_subset_of_reference(self):
        reference = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        candidate = reference[:2]
        scores = bertscore(candidate, reference)
        assert scores["precision"] == pytest.approx(1.0)
        assert scores["recall"] == pytest.approx(2.0 / 3.0)

    def test_symmetry_of_f1(self):
        rng = random.Random(0)
        a = [[rng.gauss(0, 1) for _ in range(4)] for _ in range(3)]
        b = [[rng.gauss(0, 1) for _ in range(4)] for _ in range(5)]
        ab, ba = bertscore(a, b), bertscore(b, a)
        assert ab["f1"] == pytest.approx(ba["f1"])
        assert ab["precision"] == pytest.approx(ba["recall"])

    def test_scores_bounded(self):
        rng = random.Random(1)
        a = [[rng.gauss(0, 1) for _ in range(3)] for _ in range(4)]
        b = [[rng.gauss(0, 1) for _ in range(3)] for _ in range(4)]
        scores = bertscore(a, b)
        for value in scores.values():
            assert -1.0 - 1e-12 <= value <= 1.0 + 1e-12

    def test_does_not_mutate_inputs(self):
        import numpy as np
        a = np.array([[3.0, 4.0]])
        bertscore(a, a)
        assert a[0, 0] == 3.0

    def test_zero_norm_rejected(self):
        with pytest.raises(ValueError):
            bertscore([[0.0, 0.0]], [[1.0, 0.0]])

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            bertscore([[1.0, 0.0]], [[1.0, 0.0, 0.0]])


class TestEcMac:
    def test_product_rule_values(self):
        ec = proportion(round(0.664 * 1000), 1000)
        mac = proportion(187, 250)
        rate, se = ec_mac_product(ec, mac)
        assert rate == pytest.approx(0.4967, abs=5e-4)
        assert se > 0

    def test_perfect(self):
        rate, _ = ec_mac_product(proportion(10, 10), proportion(10, 10))
        assert rate == 1.0

    def test_ec_metrics_counts_ok_status(self):
        records = [{"exec": {"status": "ok"}}, {"exec": {"status": "parse_error"}},
                   {"exec": {"status": "ok"}}, {"exec": None}]
        result = ec_metrics(records, proportion(1, 2))
        assert result["ec"].successes == 2
        assert result["ec"].n == 4

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ec_metrics([], proportion(1, 2))


class TestCorpusStats:
    def test_exact_duplicates_removed(self):
        stats = corpus_stats(["Two cats sat here.", "Two cats sat here."])
        assert stats.n_raw == 2 and stats.n_dedup == 1

    def test_whitespace_normalization(self):
        stats = corpus_stats(["Two cats  sat here. ", "Two cats sat here."])
        assert stats.n_dedup == 1

    def test_case_preserved(self):
        assert corpus_stats(["Two cats.", "two cats."]).n_dedup == 2

    def test_values(self):
        stats = corpus_stats(["The cat sat."])
        assert stats.mean_length == 3
        assert stats.mean_fkgl == pytest.approx(-2.62, abs=1e-9)
        assert stats.sd_length == 0.0

    def test_normalize_question(self):
        assert normalize_question("  a\t b\nc ") == "a b c"

    def test_dedup_keeps_first_occurrence(self):
        assert dedup_questions(["a b", "a  b", "c"]) == ["a b", "c"]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            corpus_stats([])


class TestHistogram:
    def test_basic(self):
        edges, counts = histogram([1, 1, 2], 1.0, 0.0, 3.0)
        assert edges == [0.0, 1.0, 2.0, 3.0]
        assert counts == [0, 2, 1]

    def test_single_bin(self):
        _, counts = histogram([5.0, 5.0, 5.0], 10.0, 0.0, 10.0)
        assert counts == [3]

    def test_counts_sum_to_in_range(self):
        rng = random.Random(3)
        values = [rng.uniform(-5, 15) for _ in range(500)]
        _, counts = histogram(values, 0.5, 0.0, 10.0)
        assert sum(counts) == sum(1 for v in values if 0.0 <= v < 10.0)

    def test_right_edge_open(self):
        _, counts = histogram([3.0], 1.0, 0.0, 3.0)
        assert sum(counts) == 0

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            histogram([1.0], 0.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            histogram([], 1.0, 0.0, 1.0)


class TestScoreFileInterfaces:
    def test_load_logprobs(self, tmp_path):
        from mwplab.metrics import load_logprobs
        path = tmp_path / "lp.jsonl"
        path.write_text('{"id": "a", "token_logprobs": [-1.0, -2.0]}\n')
        assert load_logprobs(path) == {"a": [-1.0, -2.0]}

    def test_load_logprobs_bad_row(self, tmp_path):
        from mwplab.metrics import load_logprobs
        path = tmp_path / "lp.jsonl"
        path.write_text('{"id": "a"}\n')
        with pytest.raises(ValueError):
            load_logprobs(path)

    def test_load_embeddings(self, tmp_path):
        from mwplab.metrics import load_embeddings
        path = tmp_path / "emb.jsonl"
        path.write_text('{"id": "a", "vectors": [[1.0, 0.0], [0.0, 1.0]]}\n')
        assert load_embeddings(path)["a"] == [[1.0, 0.0], [0.0, 1.0]]

    def test_corpus_bertscore_pools_references(self):
        from mwplab.metrics import corpus_bertscore_f1
        candidates = {"c": [[1.0, 0.0]]}
        references = {"r1": [[1.0, 0.0]], "r2": [[0.0, 1.0]]}
        scores = corpus_bertscore_f1(candidates, references)
        # precision 1 (exact match in pool), recall 0.5 -> f1 = 2/3
        assert scores["c"] == pytest.approx(2 / 3)
