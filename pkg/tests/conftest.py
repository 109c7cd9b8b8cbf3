"""Shared builders for tests."""

import numpy as np
import pytest

from althresh import (
    AnomalyScore,
    CandidateEntry,
    Label,
    LabelSource,
    LabelValue,
    QueriedEntry,
    QueryState,
    Sequence,
)


def make_sequence(seq_id, values, truth=None, duration_s=60.0):
    """Sequence whose single channel mirrors the given values."""
    arr = np.asarray(values, dtype=float)
    return Sequence(
        id=seq_id, channels=arr.reshape(-1, 1), duration_s=duration_s, truth=truth
    )


def make_candidate(seq_id, values):
    return CandidateEntry(
        sequence=make_sequence(seq_id, values),
        score=AnomalyScore(sequence_id=seq_id, values=values),
    )


def make_queried(seq_id, values, label_value=LabelValue.NOMINAL):
    return QueriedEntry(
        sequence=make_sequence(seq_id, values),
        score=AnomalyScore(sequence_id=seq_id, values=values),
        label=Label(value=label_value, source=LabelSource.SIMULATED_ORACLE),
    )


def make_state(candidate_values, queried_values=(), queried_labels=None):
    """QueryState from {id: values} mappings, insertion order preserved."""
    candidates = tuple(make_candidate(k, v) for k, v in candidate_values.items())
    if queried_labels is None:
        queried_labels = {k: LabelValue.NOMINAL for k in queried_values}
    queried = tuple(
        make_queried(k, v, queried_labels[k]) for k, v in dict(queried_values).items()
    )
    return QueryState(candidates=candidates, queried=queried)


@pytest.fixture
def label_nominal():
    return Label(value=LabelValue.NOMINAL, source=LabelSource.GROUND_TRUTH)


@pytest.fixture
def label_anomalous():
    return Label(value=LabelValue.ANOMALOUS, source=LabelSource.GROUND_TRUTH)
