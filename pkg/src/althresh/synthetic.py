"""Seeded synthetic data and a nearest-window reference scorer.

The generator draws a per-channel pattern library (sine, ramp, and offset
components) once per seed, then emits day-grouped sequences whose durations
tile exactly one day per group, injecting windowed anomalies (level shift,
amplitude scaling, or a high-frequency burst) into a configurable fraction.
The reference scorer assigns each time step the distance from the window
ending there to the nearest window in the training data, so training members
score exactly zero and novel shapes score high.  Both are deterministic given
their config.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import LabelValue, Rng, Sequence, AnomalyScore

__all__ = [
    "GeneratorConfig",
    "GeneratedDataset",
    "ScorerConfig",
    "generate_dataset",
    "reference_score",
]

SECONDS_PER_DAY = 86400


@dataclass(frozen=True)
class GeneratorConfig:
    """Synthetic dataset shape and seed."""

    n_days: int
    sequences_per_day: int
    channels: int
    length_range: Tuple[int, int]
    anomaly_rate: float
    seed: int

    def __post_init__(self) -> None:
        if self.n_days < 1:
            raise ValueError("n_days must be >= 1")
        if self.sequences_per_day < 1:
            raise ValueError("sequences_per_day must be >= 1")
        if self.channels < 1:
            raise ValueError("channels must be >= 1")
        lo, hi = self.length_range
        if not 1 <= lo <= hi:
            raise ValueError(f"invalid length range {self.length_range}")
        if not 0.0 <= self.anomaly_rate <= 1.0:
            raise ValueError("anomaly_rate must lie in [0, 1]")


@dataclass(frozen=True)
class GeneratedDataset:
    """Day-grouped unlabelled pool plus a held-out test subset with truth."""

    days: Tuple[Tuple[Sequence, ...], ...]
    test: Tuple[Sequence, ...]

    def through_day(self, day: int) -> List[Sequence]:
        """All pool sequences from day 1 through `day`, in arrival order."""
        if not 1 <= day <= len(self.days):
            raise ValueError(f"day {day} outside 1..{len(self.days)}")
        out: List[Sequence] = []
        for group in self.days[:day]:
            out.extend(group)
        return out


def _pattern_library(stream: np.random.Generator, channels: int) -> List[dict]:
    patterns = []
    for _ in range(channels):
        patterns.append(
            {
                "freq": int(stream.integers(1, 4)),
                "amp": float(stream.uniform(0.8, 1.2)),
                "offset": float(stream.uniform(-0.5, 0.5)),
                "slope": float(stream.uniform(-0.6, 0.6)),
                "phase": float(stream.uniform(0.0, 1.0)),
            }
        )
    return patterns


def _synthesize(
    stream: np.random.Generator,
    patterns: List[dict],
    length_range: Tuple[int, int],
    anomaly_rate: float,
) -> Tuple[np.ndarray, LabelValue]:
    lo, hi = length_range
    length = int(stream.integers(lo, hi + 1))
    t = np.linspace(0.0, 1.0, length)
    channels = np.empty((length, len(patterns)))
    for c, pat in enumerate(patterns):
        phase = pat["phase"] + stream.uniform(-0.1, 0.1)
        base = pat["offset"] + pat["slope"] * t
        base = base + pat["amp"] * np.sin(2.0 * np.pi * (pat["freq"] * t + phase))
        channels[:, c] = base + stream.normal(0.0, 0.05, size=length)
    truth = LabelValue.NOMINAL
    if stream.random() < anomaly_rate:
        truth = LabelValue.ANOMALOUS
        w_len = min(length, max(4, int(length * stream.uniform(0.2, 0.5))))
        start = int(stream.integers(0, length - w_len + 1))
        end = start + w_len
        c = int(stream.integers(0, len(patterns)))
        effect = ("shift", "scale", "burst")[int(stream.integers(0, 3))]
        if effect == "shift":
            sign = 1.0 if stream.random() < 0.5 else -1.0
            channels[start:end, c] += sign * stream.uniform(0.9, 1.6)
        elif effect == "scale":
            segment = channels[start:end, c]
            centre = float(segment.mean())
            channels[start:end, c] = centre + (segment - centre) * stream.uniform(2.2, 3.2)
        else:
            cycles = stream.uniform(4.0, 8.0)
            channels[start:end, c] += 0.7 * np.sin(
                2.0 * np.pi * cycles * np.linspace(0.0, 1.0, w_len)
            )
    return channels, truth


def _day_durations(sequences_per_day: int) -> List[float]:
    """Integer second counts for one day's sequences, summing exactly to a day."""
    base = SECONDS_PER_DAY // sequences_per_day
    remainder = SECONDS_PER_DAY % sequences_per_day
    return [float(base + 1) if i < remainder else float(base) for i in range(sequences_per_day)]


def generate_dataset(config: GeneratorConfig) -> GeneratedDataset:
    """Generate the day-grouped pool and test subset for one seed.

    The test subset holds max(20, a quarter of the pool size) sequences drawn
    from the same pattern library and anomaly rate, on an independent child
    stream so pool and test do not perturb each other.
    """
    rng = Rng.from_seed(config.seed)
    patterns = _pattern_library(rng.child("patterns").stream, config.channels)
    pool_stream = rng.child("pool").stream
    durations = _day_durations(config.sequences_per_day)
    days: List[Tuple[Sequence, ...]] = []
    for day in range(1, config.n_days + 1):
        group = []
        for i in range(config.sequences_per_day):
            channels, truth = _synthesize(
                pool_stream, patterns, config.length_range, config.anomaly_rate
            )
            group.append(
                Sequence(
                    id=f"d{day:02d}-s{i:02d}",
                    channels=channels,
                    duration_s=durations[i],
                    truth=truth,
                )
            )
        days.append(tuple(group))
    test_stream = rng.child("test").stream
    n_test = max(20, round(0.25 * config.n_days * config.sequences_per_day))
    test = []
    for i in range(n_test):
        channels, truth = _synthesize(
            test_stream, patterns, config.length_range, config.anomaly_rate
        )
        test.append(
            Sequence(
                id=f"test-s{i:03d}",
                channels=channels,
                duration_s=float(SECONDS_PER_DAY // config.sequences_per_day),
                truth=truth,
            )
        )
    return GeneratedDataset(days=tuple(days), test=tuple(test))


@dataclass(frozen=True)
class ScorerConfig:
    """Reference scorer settings: window length and training sequences."""

    window_w: int
    training: Tuple[Sequence, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "training", tuple(self.training))
        if self.window_w < 1:
            raise ValueError("window_w must be >= 1")
        if not self.training:
            raise ValueError("training set is empty")
        channels = self.training[0].n_channels
        for seq in self.training:
            if seq.n_channels != channels:
                raise ValueError(
                    f"training sequence {seq.id!r} has {seq.n_channels} channels, "
                    f"expected {channels}"
                )
            if seq.n_steps < self.window_w:
                raise ValueError(
                    f"training sequence {seq.id!r} is shorter than the scoring window"
                )

    @property
    def n_channels(self) -> int:
        return self.training[0].n_channels


def _window_bank(config: ScorerConfig) -> np.ndarray:
    views = [
        sliding_window_view(seq.channels, config.window_w, axis=0) for seq in config.training
    ]
    return np.ascontiguousarray(np.concatenate(views, axis=0))  # (n_windows, d, w)


def reference_score(sequence: Sequence, config: ScorerConfig) -> AnomalyScore:
    """Score one sequence against the training window bank.

    The value at step t (for t >= w - 1) is the minimum over training windows
    of the channel-averaged Euclidean distance to the query window ending at
    t; the first w - 1 steps copy the first computed value.  Windows already
    present in the training data therefore score exactly zero.

    Raises:
        ValueError: On a channel-count mismatch or a sequence shorter than
            the window.
    """
    if sequence.n_channels != config.n_channels:
        raise ValueError(
            f"channel mismatch: sequence {sequence.id!r} has {sequence.n_channels}, "
            f"training uses {config.n_channels}"
        )
    if sequence.n_steps < config.window_w:
        raise ValueError(
            f"sequence {sequence.id!r} is shorter than the scoring window "
            f"({sequence.n_steps} < {config.window_w})"
        )
    bank = _window_bank(config)
    queries = np.ascontiguousarray(
        sliding_window_view(sequence.channels, config.window_w, axis=0)
    )
    n_queries = queries.shape[0]
    n_channels = queries.shape[1]
    minima = np.empty(n_queries)
    # differences are formed before squaring, so self-matches are exactly zero
    chunk = max(1, int(4_000_000 // (bank.shape[0] * config.window_w)))
    for i0 in range(0, n_queries, chunk):
        q = queries[i0 : i0 + chunk]
        per_pair = np.zeros((q.shape[0], bank.shape[0]))
        for c in range(n_channels):
            diff = q[:, None, c, :] - bank[None, :, c, :]
            per_pair += np.sqrt(np.einsum("abw,abw->ab", diff, diff))
        per_pair /= n_channels
        minima[i0 : i0 + chunk] = per_pair.min(axis=1)
    values = np.empty(sequence.n_steps)
    values[config.window_w - 1 :] = minima
    values[: config.window_w - 1] = minima[0]
    return AnomalyScore(sequence_id=sequence.id, values=values)
