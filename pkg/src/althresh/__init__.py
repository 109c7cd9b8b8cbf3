"""Active-learning threshold calibration for sequence anomaly detectors.

Unsupervised detectors score sequences well but inherit a weak decision
threshold.  This package queries an oracle for a handful of sequence labels
per round, fits the threshold on those labels, and benchmarks four query
strategies against unsupervised and oracle-best baselines.
"""

__version__ = "0.1.0"

from .core import (
    AnomalyScore,
    CandidateEntry,
    Label,
    LabelSource,
    LabelValue,
    QueriedEntry,
    QueryState,
    Rng,
    Sequence,
    move_to_query_set,
    sequence_statistic,
)
from .dtw import cost_matrix, cumulative_matrix, dtw_distance, pairwise_distances
from .evaluation import ConfusionCounts, MetricSummary, aggregate, classify, confusion, prf1
from .oracle import LabelRequest, LabelResponse, OracleConfig, request_labels, simulated_label
from .strategies import (
    BudgetClampWarning,
    RoundRequest,
    StrategyKind,
    dqs_round,
    rqs_round,
    run_round,
    tqs_round,
    uqs_init_threshold,
    uqs_round,
)
from .thresholding import (
    Threshold,
    ThresholdProvenance,
    best_threshold,
    candidate_grid,
    fit_threshold,
    unsupervised_threshold,
)

__all__ = [
    "__version__",
    "AnomalyScore",
    "CandidateEntry",
    "Label",
    "LabelSource",
    "LabelValue",
    "QueriedEntry",
    "QueryState",
    "Rng",
    "Sequence",
    "move_to_query_set",
    "sequence_statistic",
    "cost_matrix",
    "cumulative_matrix",
    "dtw_distance",
    "pairwise_distances",
    "ConfusionCounts",
    "MetricSummary",
    "aggregate",
    "classify",
    "confusion",
    "prf1",
    "LabelRequest",
    "LabelResponse",
    "OracleConfig",
    "request_labels",
    "simulated_label",
    "BudgetClampWarning",
    "RoundRequest",
    "StrategyKind",
    "dqs_round",
    "rqs_round",
    "run_round",
    "tqs_round",
    "uqs_init_threshold",
    "uqs_round",
    "Threshold",
    "ThresholdProvenance",
    "best_threshold",
    "candidate_grid",
    "fit_threshold",
    "unsupervised_threshold",
]
