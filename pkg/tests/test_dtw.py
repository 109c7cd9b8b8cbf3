"""Warping distance: frozen values, matrix construction, and properties."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from althresh import cost_matrix, cumulative_matrix, dtw_distance, pairwise_distances
from _oracles import dtw_by_path_enumeration

finite_traces = st.lists(
    st.floats(-100.0, 100.0, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=12,
)


class TestDistanceValues:
    def test_identical_sequences(self):
        assert dtw_distance([1, 2, 3], [1, 2, 3]) == 0.0

    def test_single_cell_alignment(self):
        assert dtw_distance([0.0], [3.0]) == 3.0

    def test_near_identical_pair(self):
        assert dtw_distance([1, 2, 3], [2, 2, 3]) == 1.0

    def test_constant_sequences_any_lengths(self):
        assert dtw_distance([2.0] * 3, [2.0] * 9) == 0.0

    def test_matches_path_enumeration_on_small_cases(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            x = rng.integers(0, 4, size=rng.integers(1, 5)).astype(float)
            y = rng.integers(0, 4, size=rng.integers(1, 5)).astype(float)
            assert dtw_distance(x, y) == dtw_by_path_enumeration(x, y)


class TestValidation:
    def test_empty_trace_errors(self):
        with pytest.raises(ValueError, match="empty"):
            dtw_distance([], [1.0])

    def test_non_finite_errors(self):
        with pytest.raises(ValueError, match="non-finite"):
            dtw_distance([1.0, np.nan], [1.0])

    def test_pairwise_names_the_offending_pair(self):
        with pytest.raises(ValueError, match=r"pair \(1, 0\)"):
            pairwise_distances([np.array([1.0]), np.array([])], [np.array([2.0])])


class TestMatrices:
    def test_cost_matrix_cells(self):
        cost = cost_matrix([1, 2], [2, 4])
        assert cost.tolist() == [[1.0, 9.0], [0.0, 4.0]]

    def test_cumulative_boundary_accumulates_single_predecessor(self):
        acc = cumulative_matrix([1, 2, 3], [2, 2, 3])
        cost = cost_matrix([1, 2, 3], [2, 2, 3])
        assert acc[0, 0] == cost[0, 0]
        assert np.all(np.diff(acc[0, :]) >= 0)
        assert np.all(np.diff(acc[:, 0]) >= 0)

    @given(finite_traces, finite_traces)
    @settings(max_examples=150, deadline=None)
    def test_kernel_agrees_with_full_matrix(self, x, y):
        acc = cumulative_matrix(x, y)
        assert dtw_distance(x, y) == np.sqrt(acc[-1, -1])


class TestProperties:
    @given(finite_traces, finite_traces)
    @settings(max_examples=150, deadline=None)
    def test_symmetry_and_nonnegativity(self, x, y):
        d = dtw_distance(x, y)
        assert d >= 0.0
        assert d == dtw_distance(y, x)

    @given(finite_traces)
    @settings(max_examples=100, deadline=None)
    def test_self_distance_zero(self, x):
        assert dtw_distance(x, x) == 0.0

    @given(st.integers(1, 12), st.integers(0, 2**32 - 1))
    @settings(max_examples=100, deadline=None)
    def test_equal_length_bounded_by_euclidean(self, length, seed):
        rng = np.random.default_rng(seed)
        x = rng.normal(size=length)
        y = rng.normal(size=length)
        assert dtw_distance(x, y) <= np.linalg.norm(x - y) + 1e-12


class TestPairwise:
    def test_self_pair(self):
        trace = np.array([1.0, 2.0])
        assert pairwise_distances([trace], [trace]).tolist() == [[0.0]]

    def test_single_cell_distances(self):
        out = pairwise_distances([np.array([0.0]), np.array([3.0])], [np.array([3.0])])
        assert out.tolist() == [[3.0], [0.0]]

    def test_equals_elementwise_loop(self):
        rng = np.random.default_rng(11)
        a = [rng.integers(0, 5, size=rng.integers(1, 8)).astype(float) for _ in range(3)]
        b = [rng.integers(0, 5, size=rng.integers(1, 8)).astype(float) for _ in range(2)]
        out = pairwise_distances(a, b)
        for n in range(3):
            for m in range(2):
                assert out[n, m] == dtw_distance(a[n], b[m])


class TestBand:
    def test_zero_band_on_equal_lengths_is_diagonal_path(self):
        x = np.array([0.0, 1.0, 4.0])
        y = np.array([1.0, 1.0, 2.0])
        assert dtw_distance(x, y, band=0) == np.linalg.norm(x - y)

    def test_band_widens_for_unequal_lengths(self):
        # a path must exist even when the band is narrower than the length gap
        assert np.isfinite(dtw_distance([1.0], [1.0, 1.0, 1.0, 1.0], band=0))

    def test_band_never_improves_on_unconstrained(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            x = rng.normal(size=rng.integers(2, 15))
            y = rng.normal(size=rng.integers(2, 15))
            assert dtw_distance(x, y, band=2) >= dtw_distance(x, y) - 1e-12

    def test_negative_band_errors(self):
        with pytest.raises(ValueError, match="band"):
            dtw_distance([1.0], [1.0], band=-1)
