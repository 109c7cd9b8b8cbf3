"""Core domain types for threshold calibration of sequence anomaly detectors.

A dataset is a collection of variable-length multivariate sequences.  A
detector reduces each sequence to a univariate anomaly score (one value per
time step), and everything downstream -- query strategies, oracle labelling,
threshold fitting, classification -- works on those scores.  This module
holds the shared value types plus the seeded random-stream wrapper that all
stochastic components draw from.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence as SequenceType, Tuple, Union

import numpy as np

__all__ = [
    "LabelValue",
    "LabelSource",
    "Label",
    "Sequence",
    "AnomalyScore",
    "CandidateEntry",
    "QueriedEntry",
    "QueryState",
    "Rng",
    "sequence_statistic",
    "move_to_query_set",
]


class LabelValue(str, Enum):
    """Binary sequence-level class, with `anomalous` as the positive class."""

    NOMINAL = "nominal"
    ANOMALOUS = "anomalous"

    def flipped(self) -> "LabelValue":
        """Return the opposite class."""
        if self is LabelValue.NOMINAL:
            return LabelValue.ANOMALOUS
        return LabelValue.NOMINAL


class LabelSource(str, Enum):
    """Where a label came from."""

    GROUND_TRUTH = "ground_truth"
    SIMULATED_ORACLE = "simulated_oracle"
    HUMAN_ORACLE = "human_oracle"


@dataclass(frozen=True)
class Label:
    """A sequence-level class assignment together with its provenance."""

    value: LabelValue
    source: LabelSource


def _as_channel_matrix(channels) -> np.ndarray:
    arr = np.asarray(channels, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"channels must be a (steps, channels) matrix, got ndim={arr.ndim}")
    return arr


@dataclass(frozen=True)
class Sequence:
    """One variable-length multivariate time series.

    Attributes:
        id: Unique identifier within a dataset.
        channels: Array of shape (n_steps, n_channels), one row per time step.
        duration_s: Wall-clock duration in seconds; day bookkeeping sums these.
        truth: Optional ground-truth class, present on synthetic/benchmark data.
    """

    id: str
    channels: np.ndarray
    duration_s: float
    truth: Optional[LabelValue] = None

    def __post_init__(self) -> None:
        arr = _as_channel_matrix(self.channels)
        if arr.shape[0] < 1:
            raise ValueError(f"sequence {self.id!r} has no time steps")
        if arr.shape[1] < 1:
            raise ValueError(f"sequence {self.id!r} has no channels")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"sequence {self.id!r} contains non-finite values")
        if not self.duration_s > 0:
            raise ValueError(f"sequence {self.id!r} needs a positive duration")
        object.__setattr__(self, "channels", arr)

    @property
    def n_steps(self) -> int:
        return int(self.channels.shape[0])

    @property
    def n_channels(self) -> int:
        return int(self.channels.shape[1])


@dataclass(frozen=True)
class AnomalyScore:
    """Per-time-step anomaly score trace produced by a detector for one sequence."""

    sequence_id: str
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"score for {self.sequence_id!r} contains non-finite values")
        object.__setattr__(self, "values", arr)


def sequence_statistic(score: AnomalyScore) -> float:
    """Collapse a score trace to its sequence-level statistic: the maximum value.

    Classification, threshold fitting, and the score-guided query strategies
    all compare this single number against a threshold.

    Raises:
        ValueError: If the score trace is empty.
    """
    if score.values.size == 0:
        raise ValueError(f"empty anomaly score for {score.sequence_id!r}")
    return float(np.max(score.values))


@dataclass(frozen=True)
class CandidateEntry:
    """An unlabelled sequence paired with its current anomaly score."""

    sequence: Sequence
    score: AnomalyScore

    def __post_init__(self) -> None:
        if self.score.sequence_id != self.sequence.id:
            raise ValueError(
                f"score belongs to {self.score.sequence_id!r}, not {self.sequence.id!r}"
            )
        if self.score.values.size != self.sequence.n_steps:
            raise ValueError(
                f"score for {self.sequence.id!r} has {self.score.values.size} values "
                f"for {self.sequence.n_steps} time steps"
            )


@dataclass(frozen=True)
class QueriedEntry:
    """A queried sequence with the score it had when queried and the oracle's label."""

    sequence: Sequence
    score: AnomalyScore
    label: Label

    def __post_init__(self) -> None:
        if self.score.sequence_id != self.sequence.id:
            raise ValueError(
                f"score belongs to {self.score.sequence_id!r}, not {self.sequence.id!r}"
            )


@dataclass(frozen=True)
class QueryState:
    """Snapshot of one active-learning session.

    The candidate pool and the query set are disjoint; a strategy round moves
    sequences from the former to the latter.  Queried entries keep the score
    they carried when queried, so threshold fits are stable even when the
    detector is refitted later.
    """

    candidates: Tuple[CandidateEntry, ...]
    queried: Tuple[QueriedEntry, ...] = ()
    round: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "candidates", tuple(self.candidates))
        object.__setattr__(self, "queried", tuple(self.queried))
        cand_ids = [e.sequence.id for e in self.candidates]
        queried_ids = [e.sequence.id for e in self.queried]
        if len(set(cand_ids)) != len(cand_ids):
            raise ValueError("duplicate sequence id in candidate pool")
        if len(set(queried_ids)) != len(queried_ids):
            raise ValueError("duplicate sequence id in query set")
        overlap = set(cand_ids) & set(queried_ids)
        if overlap:
            raise ValueError(f"sequences present in both pools: {sorted(overlap)}")
        if self.round < 0:
            raise ValueError("round must be >= 0")

    def candidate_ids(self) -> list:
        return [e.sequence.id for e in self.candidates]

    def queried_ids(self) -> list:
        return [e.sequence.id for e in self.queried]


def move_to_query_set(state: QueryState, index: int, label: Label) -> QueryState:
    """Return a new state with candidate `index` moved into the query set.

    The moved entry keeps its at-query-time score and gains the given label.
    Pool order of the remaining candidates is preserved.

    Raises:
        IndexError: If `index` does not address a current candidate.
    """
    if not 0 <= index < len(state.candidates):
        raise IndexError(
            f"candidate index {index} out of range for pool of {len(state.candidates)}"
        )
    entry = state.candidates[index]
    remaining = state.candidates[:index] + state.candidates[index + 1 :]
    moved = QueriedEntry(sequence=entry.sequence, score=entry.score, label=label)
    return QueryState(
        candidates=remaining,
        queried=state.queried + (moved,),
        round=state.round,
    )


def _tag_digest(seed: int, tags: Tuple[Union[int, str], ...]) -> int:
    """Hash (seed, tags) to a 64-bit integer used as a child stream seed."""
    h = hashlib.sha256()
    h.update(repr(int(seed)).encode("utf-8"))
    for tag in tags:
        h.update(b"\x1f")
        h.update(repr(tag).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "little")


@dataclass
class Rng:
    """Seeded random stream with deterministic, tag-addressed child streams.

    Wraps a PCG64 generator.  `child` derives an independent stream from the
    parent's seed and a tuple of tags (for example fold index and a purpose
    string), so the same tags always yield the same stream no matter how many
    draws the parent has already made.
    """

    seed: int
    stream: np.random.Generator = field(repr=False)

    @classmethod
    def from_seed(cls, seed: int) -> "Rng":
        return cls(seed=int(seed), stream=np.random.Generator(np.random.PCG64(int(seed))))

    def child(self, *tags: Union[int, str]) -> "Rng":
        """Derive the child stream addressed by `tags`."""
        return Rng.from_seed(_tag_digest(self.seed, tags))

    def uniform_index(self, n: int) -> int:
        """Draw one index uniformly from range(n)."""
        if n < 1:
            raise ValueError("cannot draw an index from an empty range")
        return int(self.stream.integers(0, n))

    def bernoulli(self, p: float) -> bool:
        """Draw one Bernoulli(p) outcome as `uniform() < p`."""
        return bool(self.stream.random() < p)
