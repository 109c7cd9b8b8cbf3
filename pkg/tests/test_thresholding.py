"""Threshold construction: unsupervised ceiling, candidate grid, and fits."""

import numpy as np
import pytest

from althresh import (
    AnomalyScore,
    Label,
    LabelSource,
    LabelValue,
    Threshold,
    ThresholdProvenance,
    best_threshold,
    candidate_grid,
    classify,
    fit_threshold,
    sequence_statistic,
    unsupervised_threshold,
)
from _oracles import dense_sweep_best_f1, f1_at_tau


def labelled(*pairs):
    """(stat, 'N'|'A') pairs to (score, label) with one-point score traces."""
    out = []
    for i, (stat, mark) in enumerate(pairs):
        value = LabelValue.ANOMALOUS if mark == "A" else LabelValue.NOMINAL
        out.append(
            (
                AnomalyScore(sequence_id=f"s{i}", values=[stat]),
                Label(value=value, source=LabelSource.SIMULATED_ORACLE),
            )
        )
    return out


class TestThresholdType:
    def test_rejects_non_finite_value(self):
        with pytest.raises(ValueError, match="finite"):
            Threshold(value=float("nan"), provenance=ThresholdProvenance.FITTED)

    def test_only_fitted_thresholds_carry_label_counts(self):
        with pytest.raises(ValueError, match="label count"):
            Threshold(value=1.0, provenance=ThresholdProvenance.UNSUPERVISED, fitted_on=3)


class TestUnsupervisedThreshold:
    def test_global_max(self):
        tau = unsupervised_threshold(
            [AnomalyScore("a", [0.1, 0.5]), AnomalyScore("b", [0.3])]
        )
        assert tau.value == 0.5
        assert tau.provenance is ThresholdProvenance.UNSUPERVISED

    def test_singleton(self):
        assert unsupervised_threshold([AnomalyScore("a", [2.0])]).value == 2.0

    def test_zeros(self):
        scores = [AnomalyScore("a", [0.0, 0.0]), AnomalyScore("b", [0.0])]
        assert unsupervised_threshold(scores).value == 0.0

    def test_empty_errors(self):
        with pytest.raises(ValueError, match="empty validation set"):
            unsupervised_threshold([])

    def test_predicts_nothing_anomalous_on_its_own_inputs(self):
        rng = np.random.default_rng(0)
        scores = [
            AnomalyScore(f"s{i}", rng.uniform(0, 5, size=rng.integers(1, 20)))
            for i in range(30)
        ]
        tau = unsupervised_threshold(scores)
        assert all(classify(s, tau) is LabelValue.NOMINAL for s in scores)


class TestCandidateGrid:
    def test_construction_rule(self):
        assert candidate_grid([0.3, 0.5, 0.7]) == [-0.7, 0.4, 0.6, 1.7]

    def test_single_value_sentinels(self):
        assert candidate_grid([2.0]) == [1.0, 3.0]

    def test_duplicates_collapse(self):
        assert candidate_grid([1.0, 1.0, 2.0]) == [0.0, 1.5, 3.0]

    def test_empty_errors(self):
        with pytest.raises(ValueError, match="no statistics"):
            candidate_grid([])

    def test_ascending_and_bracketing(self):
        rng = np.random.default_rng(1)
        stats = rng.normal(size=9)
        grid = candidate_grid(stats)
        assert grid == sorted(grid)
        assert grid[0] < stats.min() and grid[-1] > stats.max()


class TestFitThreshold:
    def test_separable_set(self):
        tau = fit_threshold(labelled((0.3, "N"), (0.5, "A"), (0.7, "A")))
        assert tau.value == 0.4
        assert tau.provenance is ThresholdProvenance.FITTED
        assert tau.fitted_on == 3

    def test_all_nominal_takes_high_sentinel(self):
        tau = fit_threshold(labelled((0.3, "N"), (0.5, "N")))
        assert tau.value == 1.5

    def test_predict_all_anomalous_when_that_wins(self):
        pairs = labelled((0.5, "A"), (0.6, "N"), (0.7, "A"))
        tau = fit_threshold(pairs)
        assert tau.value == -0.5
        stats = [sequence_statistic(s) for s, _ in pairs]
        truth = [l.value is LabelValue.ANOMALOUS for _, l in pairs]
        assert f1_at_tau(stats, truth, tau.value) == pytest.approx(0.8)

    def test_empty_errors(self):
        with pytest.raises(ValueError, match="without labelled scores"):
            fit_threshold([])

    def test_optimal_against_dense_sweep(self):
        rng = np.random.default_rng(4)
        for _ in range(60):
            n = int(rng.integers(1, 9))
            stats = np.round(rng.uniform(0, 3, size=n), 3)
            marks = ["A" if rng.random() < 0.5 else "N" for _ in range(n)]
            pairs = labelled(*zip(stats, marks))
            tau = fit_threshold(pairs)
            truth = [m == "A" for m in marks]
            assert f1_at_tau(stats, truth, tau.value) == dense_sweep_best_f1(stats, truth)

    def test_tie_break_takes_largest_threshold(self):
        # both sentinels and the midpoint reach F1 = 0 on all-nominal data
        tau = fit_threshold(labelled((1.0, "N"), (3.0, "N")))
        assert tau.value == 4.0

    def test_shift_invariance_of_decisions(self):
        rng = np.random.default_rng(9)
        stats = rng.uniform(0, 2, size=6)
        marks = ["A", "N", "A", "N", "N", "A"]
        base = fit_threshold(labelled(*zip(stats, marks)))
        shifted = fit_threshold(labelled(*zip(stats + 10.0, marks)))
        base_pred = [s > base.value for s in stats]
        shifted_pred = [s > shifted.value for s in stats + 10.0]
        assert base_pred == shifted_pred


class TestBestThreshold:
    def test_separable_test_set_reaches_perfect_f1(self):
        pairs = labelled((0.1, "N"), (0.2, "N"), (0.9, "A"))
        tau = best_threshold(pairs)
        stats = [sequence_statistic(s) for s, _ in pairs]
        truth = [l.value is LabelValue.ANOMALOUS for _, l in pairs]
        assert f1_at_tau(stats, truth, tau.value) == 1.0
        assert tau.provenance is ThresholdProvenance.BEST
        assert tau.fitted_on == 0

    def test_same_data_same_value_as_fit(self):
        pairs = labelled((0.3, "N"), (0.5, "A"), (0.7, "A"))
        assert best_threshold(pairs).value == fit_threshold(pairs).value

    def test_dominates_every_real_threshold(self):
        rng = np.random.default_rng(12)
        stats = rng.uniform(0, 1, size=8)
        marks = ["A" if rng.random() < 0.4 else "N" for _ in range(8)]
        pairs = labelled(*zip(stats, marks))
        truth = [m == "A" for m in marks]
        tau = best_threshold(pairs)
        best = f1_at_tau(stats, truth, tau.value)
        for probe in np.linspace(stats.min() - 1, stats.max() + 1, 2000):
            assert f1_at_tau(stats, truth, probe) <= best
