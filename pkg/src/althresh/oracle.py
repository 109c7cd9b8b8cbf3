"""Label providers: a noisy simulated oracle and the human labelling contract.

The simulated oracle answers from ground truth but flips each answer with a
fixed probability, one independent draw per queried sequence.  Human labels
arrive through LabelRequest/LabelResponse pairs; the labelling service in
`althresh.server` speaks this contract over HTTP.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterable, List

from .core import Label, LabelSource, LabelValue, Rng

__all__ = [
    "OracleConfig",
    "LabelRequest",
    "LabelResponse",
    "simulated_label",
    "request_labels",
]


@dataclass(frozen=True)
class OracleConfig:
    """Simulated oracle settings: flip probability plus its random stream."""

    mislabel_probability: float
    rng: Rng

    def __post_init__(self) -> None:
        if not 0.0 <= self.mislabel_probability <= 1.0:
            raise ValueError(
                f"mislabel probability must lie in [0, 1], got {self.mislabel_probability}"
            )


@dataclass(frozen=True)
class LabelRequest:
    """A pending ask for one sequence's label."""

    sequence_id: str


@dataclass(frozen=True)
class LabelResponse:
    """A human answer to a LabelRequest."""

    sequence_id: str
    value: LabelValue


def simulated_label(truth: Label, config: OracleConfig) -> Label:
    """Answer one query from ground truth, flipped with the configured probability.

    Exactly one Bernoulli draw is consumed per call, so a fixed seed yields a
    reproducible flip pattern across a whole run.
    """
    value = truth.value
    if config.rng.bernoulli(config.mislabel_probability):
        value = value.flipped()
    return Label(value=value, source=LabelSource.SIMULATED_ORACLE)


def request_labels(ids: Iterable[str], selection: Collection[str]) -> List[LabelRequest]:
    """Turn selected ids into pending label requests, in order.

    Raises:
        ValueError: If an id is not part of the current query selection.
    """
    allowed = set(selection)
    requests: List[LabelRequest] = []
    for seq_id in ids:
        if seq_id not in allowed:
            raise ValueError(f"sequence id {seq_id!r} is not in the current query selection")
        requests.append(LabelRequest(sequence_id=seq_id))
    return requests
