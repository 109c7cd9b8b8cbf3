"""Classification against a threshold and sequence-level metrics.

The positive class is `anomalous` throughout.  Ratios with empty denominators
(no predicted positives, no true positives) are defined as zero so metric
aggregation never divides by zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence as SequenceType, Tuple, Union

import numpy as np

from .core import AnomalyScore, Label, LabelValue, sequence_statistic
from .thresholding import Threshold

__all__ = [
    "ConfusionCounts",
    "MetricSummary",
    "classify",
    "confusion",
    "prf1",
    "aggregate",
]

LabelLike = Union[Label, LabelValue]


def _value_of(label: LabelLike) -> LabelValue:
    return label.value if isinstance(label, Label) else label


@dataclass(frozen=True)
class ConfusionCounts:
    """Sequence-level confusion counts with `anomalous` as positive."""

    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricSummary:
    """Mean and sample standard deviation of a metric over repeated runs."""

    mean: float
    std: float
    n_runs: int


def classify(score: AnomalyScore, tau: Threshold) -> LabelValue:
    """Predict a sequence's class: anomalous iff its statistic exceeds tau.

    The comparison is strict, so a statistic exactly equal to the threshold
    is nominal.  Returns the bare class value; predictions carry no oracle
    provenance.
    """
    return (
        LabelValue.ANOMALOUS
        if sequence_statistic(score) > tau.value
        else LabelValue.NOMINAL
    )


def confusion(
    predicted: SequenceType[LabelLike], truth: SequenceType[LabelLike]
) -> ConfusionCounts:
    """Count the confusion cells for aligned prediction/truth lists.

    Raises:
        ValueError: If the lists differ in length.
    """
    if len(predicted) != len(truth):
        raise ValueError(
            f"prediction/truth length mismatch: {len(predicted)} vs {len(truth)}"
        )
    tp = fp = fn = tn = 0
    for pred, true in zip(predicted, truth):
        pred_pos = _value_of(pred) is LabelValue.ANOMALOUS
        true_pos = _value_of(true) is LabelValue.ANOMALOUS
        if pred_pos and true_pos:
            tp += 1
        elif pred_pos:
            fp += 1
        elif true_pos:
            fn += 1
        else:
            tn += 1
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def prf1(
    predicted: SequenceType[LabelLike], truth: SequenceType[LabelLike]
) -> Tuple[float, float, float]:
    """Precision, recall, and F1 with undefined ratios taken as zero."""
    counts = confusion(predicted, truth)
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else 0.0
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else 0.0
    f1 = (
        2.0 * precision * recall / (precision + recall)
        if precision + recall
        else 0.0
    )
    return precision, recall, f1


def aggregate(values: SequenceType[float]) -> MetricSummary:
    """Mean and sample standard deviation (n - 1), zero spread for one value.

    Raises:
        ValueError: If no values are given.
    """
    if len(values) == 0:
        raise ValueError("cannot aggregate an empty metric list")
    arr = np.asarray(values, dtype=np.float64)
    std = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
    return MetricSummary(mean=float(np.mean(arr)), std=std, n_runs=int(arr.size))
