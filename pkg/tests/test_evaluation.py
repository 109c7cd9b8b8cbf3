"""Classification and sequence-level metrics."""

import numpy as np
import pytest

from althresh import (
    AnomalyScore,
    LabelValue,
    Threshold,
    ThresholdProvenance,
    aggregate,
    classify,
    confusion,
    prf1,
)

N = LabelValue.NOMINAL
A = LabelValue.ANOMALOUS


def tau(value):
    return Threshold(value=value, provenance=ThresholdProvenance.FITTED, fitted_on=1)


class TestClassify:
    def test_exceedance_is_anomalous(self):
        assert classify(AnomalyScore("s", [0.1, 0.9]), tau(0.5)) is A

    def test_boundary_is_nominal(self):
        assert classify(AnomalyScore("s", [0.5]), tau(0.5)) is N

    def test_below_threshold_is_nominal(self):
        assert classify(AnomalyScore("s", [0.1]), tau(0.5)) is N

    def test_monotone_in_threshold(self):
        score = AnomalyScore("s", [0.4, 0.7])
        flips = [classify(score, tau(v)) for v in np.linspace(0, 1, 21)]
        # once nominal, raising tau further never turns it anomalous again
        seen_nominal = False
        for value in flips:
            if value is N:
                seen_nominal = True
            assert not (seen_nominal and value is A)


class TestConfusion:
    def test_counts_sum_to_total(self):
        counts = confusion([A, A, N, N], [A, N, A, N])
        assert (counts.tp, counts.fp, counts.fn, counts.tn) == (1, 1, 1, 1)
        assert counts.total == 4

    def test_length_mismatch_errors(self):
        with pytest.raises(ValueError, match="length mismatch"):
            confusion([A], [A, N])


class TestPrf1:
    def test_perfect_predictions(self):
        assert prf1([A, N, A], [A, N, A]) == (1.0, 1.0, 1.0)

    def test_balanced_errors(self):
        # tp=1, fp=1, fn=1
        assert prf1([A, A, N], [A, N, A]) == (0.5, 0.5, 0.5)

    def test_no_positives_anywhere_is_all_zero(self):
        assert prf1([N, N], [N, N]) == (0.0, 0.0, 0.0)

    def test_zero_when_no_true_positives(self):
        precision, recall, f1 = prf1([A, N], [N, A])
        assert f1 == 0.0

    def test_permutation_invariance(self):
        pred = [A, N, A, N, A]
        truth = [A, A, N, N, A]
        order = [4, 2, 0, 3, 1]
        assert prf1(pred, truth) == prf1([pred[i] for i in order], [truth[i] for i in order])


class TestAggregate:
    def test_textbook_sample_std(self):
        summary = aggregate([1.0, 2.0, 3.0])
        assert summary.mean == 2.0
        assert summary.std == 1.0
        assert summary.n_runs == 3

    def test_singleton_has_zero_spread(self):
        summary = aggregate([5.0])
        assert (summary.mean, summary.std, summary.n_runs) == (5.0, 0.0, 1)

    def test_constant_values_have_zero_spread(self):
        assert aggregate([0.7] * 9).std == 0.0

    def test_empty_errors(self):
        with pytest.raises(ValueError, match="empty metric list"):
            aggregate([])


class TestThresholdGridConsistency:
    def test_f1_is_piecewise_constant_between_statistics(self):
        rng = np.random.default_rng(6)
        scores = [AnomalyScore(f"s{i}", rng.uniform(0, 1, size=5)) for i in range(10)]
        truth = [A if rng.random() < 0.4 else N for _ in range(10)]
        stats = sorted({float(s.values.max()) for s in scores})
        for lo, hi in zip(stats, stats[1:]):
            probes = np.linspace(lo, hi, 7)[1:-1]  # strictly inside the gap
            outcomes = {
                prf1([classify(s, tau(p)) for s in scores], truth) for p in probes
            }
            assert len(outcomes) == 1
