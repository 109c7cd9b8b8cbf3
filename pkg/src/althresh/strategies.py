"""Query strategies: pick which candidate sequences to send to the oracle.

Each round function inspects a QueryState and returns the ids it would query,
in selection order, without mutating the state; the caller applies the moves
once labels arrive.  All four strategies draw candidates one at a time from a
shrinking working pool, clamp the budget to the pool size with a warning, and
break ties toward the earliest-inserted candidate.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from .core import QueryState, Rng, sequence_statistic
from .dtw import dtw_distance

__all__ = [
    "StrategyKind",
    "RoundRequest",
    "BudgetClampWarning",
    "rqs_round",
    "tqs_round",
    "uqs_round",
    "uqs_init_threshold",
    "dqs_round",
    "run_round",
]


class StrategyKind(str, Enum):
    """The four query strategies.

    RQS picks uniformly at random; TQS picks the top-scored candidates; UQS
    picks the candidates whose statistic sits closest to the current
    threshold; DQS picks candidates most dissimilar, under warping distance,
    to what has already been queried.
    """

    RQS = "rqs"
    TQS = "tqs"
    UQS = "uqs"
    DQS = "dqs"


class BudgetClampWarning(UserWarning):
    """Raised as a warning when a round asks for more sequences than the pool holds."""


@dataclass(frozen=True)
class RoundRequest:
    """Parameters of one querying round."""

    budget: int
    strategy: StrategyKind
    rng: Rng
    threshold_hint: Optional[float] = None

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ValueError("budget must be >= 1")


def _clamped_budget(state: QueryState, request: RoundRequest) -> int:
    pool = len(state.candidates)
    if request.budget > pool:
        warnings.warn(
            f"budget {request.budget} exceeds candidate pool of {pool}; clamping",
            BudgetClampWarning,
            stacklevel=3,
        )
    return min(request.budget, pool)


def _check_kind(request: RoundRequest, expected: StrategyKind) -> None:
    if request.strategy is not expected:
        raise ValueError(f"request is for {request.strategy.value}, not {expected.value}")


def rqs_round(state: QueryState, request: RoundRequest) -> List[str]:
    """Random selection: one uniform draw per pick from the shrinking pool."""
    _check_kind(request, StrategyKind.RQS)
    n_pick = _clamped_budget(state, request)
    working = list(state.candidates)
    selected: List[str] = []
    for _ in range(n_pick):
        idx = request.rng.uniform_index(len(working))
        selected.append(working.pop(idx).sequence.id)
    return selected


def tqs_round(state: QueryState, request: RoundRequest) -> List[str]:
    """Top-score selection: repeatedly take the highest sequence statistic."""
    _check_kind(request, StrategyKind.TQS)
    n_pick = _clamped_budget(state, request)
    working = list(state.candidates)
    stats = [sequence_statistic(entry.score) for entry in working]
    selected: List[str] = []
    for _ in range(n_pick):
        idx = int(np.argmax(stats))
        selected.append(working.pop(idx).sequence.id)
        stats.pop(idx)
    return selected


def uqs_init_threshold(state: QueryState) -> float:
    """Bootstrap threshold for UQS: mean over candidates of their mean score.

    Only meaningful before any feedback exists; later rounds must pass the
    currently fitted threshold instead.

    Raises:
        ValueError: If the candidate pool is empty.
    """
    if not state.candidates:
        raise ValueError("cannot bootstrap a threshold from an empty candidate pool")
    means = [float(np.mean(entry.score.values)) for entry in state.candidates]
    return float(np.mean(means))


def uqs_round(state: QueryState, request: RoundRequest) -> List[str]:
    """Uncertainty selection: statistics closest to the working threshold.

    The working threshold is `threshold_hint` when given; otherwise it is
    bootstrapped from the candidate scores, which is only legal while the
    query set is still empty.
    """
    _check_kind(request, StrategyKind.UQS)
    if request.threshold_hint is not None:
        tau = float(request.threshold_hint)
    elif not state.queried:
        tau = uqs_init_threshold(state)
    else:
        raise ValueError("UQS requires current threshold")
    n_pick = _clamped_budget(state, request)
    working = list(state.candidates)
    gaps = [abs(sequence_statistic(entry.score) - tau) for entry in working]
    selected: List[str] = []
    for _ in range(n_pick):
        idx = int(np.argmin(gaps))
        selected.append(working.pop(idx).sequence.id)
        gaps.pop(idx)
    return selected


def dqs_round(state: QueryState, request: RoundRequest) -> List[str]:
    """Dissimilarity selection under warping distance.

    While the query set is empty the first pick is uniform random.  Each
    further pick finds the queried/candidate pair with the smallest distance,
    calls that candidate `o`, and takes the candidate farthest from `o`.
    Distances are memoised per round, keyed by the id pair.
    """
    _check_kind(request, StrategyKind.DQS)
    n_pick = _clamped_budget(state, request)
    pool: List[Tuple[str, np.ndarray]] = [
        (entry.sequence.id, entry.score.values) for entry in state.candidates
    ]
    queried: List[Tuple[str, np.ndarray]] = [
        (entry.sequence.id, entry.score.values) for entry in state.queried
    ]
    cache: Dict[Tuple[str, str], float] = {}

    def dist(a: Tuple[str, np.ndarray], b: Tuple[str, np.ndarray]) -> float:
        key = (a[0], b[0]) if a[0] <= b[0] else (b[0], a[0])
        if key not in cache:
            cache[key] = dtw_distance(a[1], b[1])
        return cache[key]

    selected: List[str] = []
    for _ in range(n_pick):
        if not queried:
            pick = request.rng.uniform_index(len(pool))
        else:
            cross = np.array([[dist(c, q) for q in queried] for c in pool])
            anchor = int(np.argmin(cross) // cross.shape[1])
            spread = np.array([dist(c, pool[anchor]) for c in pool])
            pick = int(np.argmax(spread))
        chosen = pool.pop(pick)
        queried.append(chosen)
        selected.append(chosen[0])
    return selected


_ROUNDS = {
    StrategyKind.RQS: rqs_round,
    StrategyKind.TQS: tqs_round,
    StrategyKind.UQS: uqs_round,
    StrategyKind.DQS: dqs_round,
}


def run_round(state: QueryState, request: RoundRequest) -> List[str]:
    """Dispatch to the round function matching `request.strategy`."""
    return _ROUNDS[request.strategy](state, request)
