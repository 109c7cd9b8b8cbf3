"""Decision thresholds: the unsupervised ceiling and label-driven grid fits.

A sequence counts as anomalous when its statistic is strictly greater than
the threshold.  The unsupervised fallback puts the threshold at the maximum
statistic seen on unlabelled validation data, so it predicts nothing
anomalous there.  Fitting searches a finite candidate grid built from the
labelled statistics and keeps the value with the best sequence-level F1,
preferring the largest threshold on ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence as SequenceType, Tuple

import numpy as np

from .core import AnomalyScore, Label, LabelValue, sequence_statistic

__all__ = [
    "ThresholdProvenance",
    "Threshold",
    "unsupervised_threshold",
    "candidate_grid",
    "fit_threshold",
    "best_threshold",
]


class ThresholdProvenance(str, Enum):
    """How a threshold value was obtained."""

    UNSUPERVISED = "unsupervised"
    FITTED = "fitted"
    BEST = "best"


@dataclass(frozen=True)
class Threshold:
    """A decision threshold with its provenance and supporting label count."""

    value: float
    provenance: ThresholdProvenance
    fitted_on: int = 0

    def __post_init__(self) -> None:
        if not np.isfinite(self.value):
            raise ValueError("threshold value must be finite")
        if self.fitted_on < 0:
            raise ValueError("fitted_on must be >= 0")
        if self.provenance is not ThresholdProvenance.FITTED and self.fitted_on != 0:
            raise ValueError(f"{self.provenance.value} thresholds carry no label count")


def unsupervised_threshold(validation_scores: SequenceType[AnomalyScore]) -> Threshold:
    """Maximum score value over a validation set, the no-feedback fallback.

    Raises:
        ValueError: If the validation set is empty.
    """
    if not validation_scores:
        raise ValueError("cannot take a threshold from an empty validation set")
    value = max(float(np.max(score.values)) for score in validation_scores)
    return Threshold(value=value, provenance=ThresholdProvenance.UNSUPERVISED)


def candidate_grid(stats: SequenceType[float]) -> List[float]:
    """Threshold candidates covering every classification the stats allow.

    With sorted unique values u_1..u_k the grid is {u_1 - 1}, all midpoints
    (u_i + u_{i+1}) / 2, and {u_k + 1}: one candidate below everything, one
    between each adjacent pair, one above everything.

    Raises:
        ValueError: If no statistics are given.
    """
    if len(stats) == 0:
        raise ValueError("cannot build a threshold grid from no statistics")
    unique = np.unique(np.asarray(stats, dtype=np.float64))
    grid = [float(unique[0] - 1.0)]
    grid.extend(float(0.5 * (unique[i] + unique[i + 1])) for i in range(unique.size - 1))
    grid.append(float(unique[-1] + 1.0))
    return grid


def _f1_at(stats: np.ndarray, is_anomalous: np.ndarray, tau: float) -> float:
    """Sequence-level F1 of `statistic > tau` with zero for undefined ratios."""
    predicted = stats > tau
    tp = int(np.count_nonzero(predicted & is_anomalous))
    fp = int(np.count_nonzero(predicted & ~is_anomalous))
    fn = int(np.count_nonzero(~predicted & is_anomalous))
    if tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2.0 * precision * recall / (precision + recall)


def _search(stats: np.ndarray, is_anomalous: np.ndarray) -> Tuple[float, float]:
    """Best (threshold, F1) over the candidate grid, largest threshold on ties."""
    best_tau = None
    best_f1 = -1.0
    for tau in candidate_grid(stats):
        f1 = _f1_at(stats, is_anomalous, tau)
        if f1 > best_f1 or (f1 == best_f1 and (best_tau is None or tau > best_tau)):
            best_tau = tau
            best_f1 = f1
    return float(best_tau), float(best_f1)


def _stats_and_truth(
    labelled: SequenceType[Tuple[AnomalyScore, Label]],
) -> Tuple[np.ndarray, np.ndarray]:
    stats = np.array([sequence_statistic(score) for score, _ in labelled], dtype=np.float64)
    is_anomalous = np.array(
        [label.value is LabelValue.ANOMALOUS for _, label in labelled], dtype=bool
    )
    return stats, is_anomalous


def fit_threshold(labelled: SequenceType[Tuple[AnomalyScore, Label]]) -> Threshold:
    """Grid-search the threshold maximising F1 on labelled query-set scores.

    Raises:
        ValueError: If no labelled scores are given.
    """
    if len(labelled) == 0:
        raise ValueError("cannot fit a threshold without labelled scores")
    stats, is_anomalous = _stats_and_truth(labelled)
    value, _ = _search(stats, is_anomalous)
    return Threshold(value=value, provenance=ThresholdProvenance.FITTED, fitted_on=len(labelled))


def best_threshold(labelled: SequenceType[Tuple[AnomalyScore, Label]]) -> Threshold:
    """Same search as `fit_threshold` run on test ground truth, as a ceiling.

    Raises:
        ValueError: If no labelled scores are given.
    """
    if len(labelled) == 0:
        raise ValueError("cannot fit a threshold without labelled scores")
    stats, is_anomalous = _stats_and_truth(labelled)
    value, _ = _search(stats, is_anomalous)
    return Threshold(value=value, provenance=ThresholdProvenance.BEST)
