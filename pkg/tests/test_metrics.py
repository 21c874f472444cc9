import random

import numpy as np
import pytest

from oracles import (
    oracle_f1_macro,
    oracle_f1_micro,
    oracle_hamming,
    oracle_jaccard,
    oracle_lrap,
)
from sinosent.errors import UsageError
from sinosent.metrics import evaluate, f1, hamming_loss, jaccard_sample_avg, lrap

K = 10


def random_instance(rng, max_n=8):
    n = rng.randrange(1, max_n + 1)
    truth = [[rng.randrange(2) for _ in range(K)] for _ in range(n)]
    pred = [[rng.randrange(2) for _ in range(K)] for _ in range(n)]
    # mix of continuous and tied scores so tie handling is exercised
    scores = [[rng.choice([rng.random(), 0.0, 0.5, 1.0]) for _ in range(K)]
              for _ in range(n)]
    return truth, pred, scores


class TestHamming:
    def test_identity(self):
        truth = [[1, 0] * 5, [0, 1] * 5]
        assert hamming_loss(truth, truth) == 0.0

    def test_complement(self):
        truth = [[1, 0] * 5]
        pred = [[0, 1] * 5]
        assert hamming_loss(truth, pred) == 1.0

    def test_three_mismatches_of_twenty(self):
        truth = [[0] * 10, [0] * 10]
        pred = [[1, 1, 0, 0, 0, 0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]]
        assert hamming_loss(truth, pred) == pytest.approx(0.15)

    def test_symmetric(self):
        rng = random.Random(0)
        truth, pred, _ = random_instance(rng)
        assert hamming_loss(truth, pred) == hamming_loss(pred, truth)

    def test_shape_mismatch(self):
        with pytest.raises(UsageError):
            hamming_loss([[0] * 10], [[0] * 10, [0] * 10])


class TestJaccard:
    def test_perfect(self):
        truth = [[1, 1, 0, 0, 0, 0, 0, 0, 0, 0]]
        assert jaccard_sample_avg(truth, truth) == 1.0

    def test_third(self):
        truth = [[1, 1, 0, 0, 0, 0, 0, 0, 0, 0]]
        pred = [[1, 0, 1, 0, 0, 0, 0, 0, 0, 0]]
        assert jaccard_sample_avg(truth, pred) == pytest.approx(1 / 3)

    def test_empty_empty_is_one(self):
        zero = [[0] * 10]
        assert jaccard_sample_avg(zero, zero) == 1.0


class TestLrap:
    def test_top_scored_single_label(self):
        truth = [[1] + [0] * 9]
        scores = [[0.99] + [0.1] * 9]
        assert lrap(truth, scores) == 1.0

    def test_fixture_five_sixths(self):
        truth = [[1, 0, 1, 0, 0, 0, 0, 0, 0, 0]]
        scores = [[0.9, 0.8, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]]
        # label 0: rank 1 of 1 true; label 2: 2 true of 3 at-or-above
        assert lrap(truth, scores) == pytest.approx(5 / 6)

    def test_all_tied_single_label(self):
        truth = [[1] + [0] * 9]
        scores = [[0.5] * 10]
        assert lrap(truth, scores) == pytest.approx(1 / 10)

    def test_empty_truth_contributes_one(self):
        truth = [[0] * 10]
        scores = [[0.3] * 10]
        assert lrap(truth, scores) == 1.0

    def test_invariant_under_monotone_transform(self):
        rng = random.Random(5)
        truth, _, scores = random_instance(rng)
        transformed = [[2.0 * s ** 3 + 1.0 for s in row] for row in scores]
        assert lrap(truth, scores) == pytest.approx(lrap(truth, transformed), abs=1e-12)

    def test_nonfinite_scores_rejected(self):
        with pytest.raises(UsageError):
            lrap([[1] + [0] * 9], [[float("nan")] * 10])


class TestF1:
    def test_perfect_all_labels_present(self):
        truth = [[1] * 10, [0] * 10, [1, 0] * 5]
        assert f1(truth, truth, "macro") == 1.0
        assert f1(truth, truth, "micro") == 1.0

    def test_all_zero_pred(self):
        truth = [[1, 0] * 5]
        pred = [[0] * 10]
        assert f1(truth, pred, "micro") == 0.0

    def test_hand_case(self):
        truth = [[1, 0, 1] + [0] * 7,
                 [0, 1, 0] + [0] * 7,
                 [1, 1, 0] + [0] * 7]
        pred = [[1, 1, 0] + [0] * 7,
                [0, 1, 0] + [0] * 7,
                [0, 1, 1] + [0] * 7]
        assert f1(truth, pred, "micro") == pytest.approx(oracle_f1_micro(truth, pred))
        assert f1(truth, pred, "macro") == pytest.approx(oracle_f1_macro(truth, pred))

    def test_micro_symmetric_under_swap(self):
        rng = random.Random(9)
        truth, pred, _ = random_instance(rng)
        assert f1(truth, pred, "micro") == pytest.approx(f1(pred, truth, "micro"), abs=1e-12)

    def test_bad_averaging(self):
        with pytest.raises(UsageError):
            f1([[0] * 10], [[0] * 10], "weighted")


class TestEvaluate:
    def test_perfect_report(self):
        truth = [[1, 0] * 5, [0, 1] * 5]
        scores = [[float(b) for b in row] for row in truth]
        report = evaluate(truth, truth, scores)
        assert (report.hamming_loss, report.jaccard_sample_avg, report.lrap,
                report.f1_macro, report.f1_micro) == (0.0, 1.0, 1.0, 1.0, 1.0)
        assert report.n_samples == 2

    def test_random_fixture_matches_oracle(self):
        rng = random.Random(50)
        truth, pred, scores = random_instance(rng, max_n=50)
        report = evaluate(truth, pred, scores)
        assert report.hamming_loss == pytest.approx(oracle_hamming(truth, pred), abs=1e-12)
        assert report.jaccard_sample_avg == pytest.approx(oracle_jaccard(truth, pred), abs=1e-12)
        assert report.lrap == pytest.approx(oracle_lrap(truth, scores), abs=1e-12)
        assert report.f1_macro == pytest.approx(oracle_f1_macro(truth, pred), abs=1e-12)
        assert report.f1_micro == pytest.approx(oracle_f1_micro(truth, pred), abs=1e-12)

    def test_report_serializes_to_flat_json(self):
        import json
        truth = [[1] + [0] * 9]
        report = evaluate(truth, truth, [[1.0] + [0.0] * 9])
        payload = json.loads(report.to_json())
        assert set(payload) == {"hamming_loss", "jaccard_sample_avg", "lrap",
                                "f1_macro", "f1_micro", "n_samples"}


class TestOracleEquivalence:
    def test_1000_random_instances(self):
        rng = random.Random(12345)
        for _ in range(1000):
            truth, pred, scores = random_instance(rng)
            assert hamming_loss(truth, pred) == pytest.approx(
                oracle_hamming(truth, pred), abs=1e-12)
            assert jaccard_sample_avg(truth, pred) == pytest.approx(
                oracle_jaccard(truth, pred), abs=1e-12)
            assert lrap(truth, scores) == pytest.approx(
                oracle_lrap(truth, scores), abs=1e-12)
            assert f1(truth, pred, "macro") == pytest.approx(
                oracle_f1_macro(truth, pred), abs=1e-12)
            assert f1(truth, pred, "micro") == pytest.approx(
                oracle_f1_micro(truth, pred), abs=1e-12)

    def test_row_permutation_invariance(self):
        rng = random.Random(77)
        truth, pred, scores = random_instance(rng, max_n=8)
        order = list(range(len(truth)))
        rng.shuffle(order)
        t2 = [truth[i] for i in order]
        p2 = [pred[i] for i in order]
        s2 = [scores[i] for i in order]
        r1 = evaluate(truth, pred, scores)
        r2 = evaluate(t2, p2, s2)
        assert np.allclose(
            [r1.hamming_loss, r1.jaccard_sample_avg, r1.lrap, r1.f1_macro, r1.f1_micro],
            [r2.hamming_loss, r2.jaccard_sample_avg, r2.lrap, r2.f1_macro, r2.f1_micro],
            atol=1e-12)
