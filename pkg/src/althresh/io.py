"""Line-delimited JSON interchange for sequences and anomaly scores.

One JSON object per line, UTF-8.  Sequence records carry
{id, duration_s, channels, truth?} with channels listed per time step;
score records carry {sequence_id, values}.  Read errors always name the
offending line number.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path
from typing import Iterable, List, Optional, Sequence as SequenceType, Union

from .core import AnomalyScore, LabelValue, Sequence

__all__ = [
    "DataFormatError",
    "read_sequences",
    "write_sequences",
    "read_scores",
    "write_scores",
    "load_scores",
    "read_labels",
]

PathLike = Union[str, Path]


class DataFormatError(ValueError):
    """A data file could not be parsed or failed validation."""


def _parse_line(path: Path, number: int, line: str) -> dict:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: line {number}: invalid JSON ({exc.msg})") from exc
    if not isinstance(record, dict):
        raise DataFormatError(f"{path}: line {number}: expected a JSON object")
    return record


def _require(record: dict, key: str, path: Path, number: int):
    if key not in record:
        raise DataFormatError(f"{path}: line {number}: missing field {key!r}")
    return record[key]


def read_sequences(path: PathLike) -> List[Sequence]:
    """Read a sequence dataset, validating shapes and channel-count consistency.

    Raises:
        DataFormatError: On malformed records, duplicate ids, or a channel
            count that differs between sequences.
    """
    path = Path(path)
    sequences: List[Sequence] = []
    seen_ids = set()
    n_channels: Optional[int] = None
    with path.open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            record = _parse_line(path, number, line)
            seq_id = _require(record, "id", path, number)
            channels = _require(record, "channels", path, number)
            duration = _require(record, "duration_s", path, number)
            truth = record.get("truth")
            try:
                truth_value = LabelValue(truth) if truth is not None else None
                seq = Sequence(
                    id=str(seq_id),
                    channels=channels,
                    duration_s=float(duration),
                    truth=truth_value,
                )
            except (TypeError, ValueError) as exc:
                raise DataFormatError(f"{path}: line {number}: {exc}") from exc
            if seq.id in seen_ids:
                raise DataFormatError(f"{path}: line {number}: duplicate sequence id {seq.id!r}")
            if n_channels is None:
                n_channels = seq.n_channels
            elif seq.n_channels != n_channels:
                raise DataFormatError(
                    f"{path}: line {number}: sequence {seq.id!r} has {seq.n_channels} "
                    f"channels, dataset uses {n_channels}"
                )
            seen_ids.add(seq.id)
            sequences.append(seq)
    return sequences


def write_sequences(sequences: Iterable[Sequence], path: PathLike) -> None:
    """Write sequences as one JSON object per line; `truth` only when present."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for seq in sequences:
            record = {
                "id": seq.id,
                "duration_s": seq.duration_s,
                "channels": seq.channels.tolist(),
            }
            if seq.truth is not None:
                record["truth"] = seq.truth.value
            handle.write(json.dumps(record) + "\n")


def read_scores(path: PathLike) -> List[AnomalyScore]:
    """Read anomaly score traces without binding them to any sequence set."""
    path = Path(path)
    scores: List[AnomalyScore] = []
    with path.open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            record = _parse_line(path, number, line)
            seq_id = _require(record, "sequence_id", path, number)
            values = _require(record, "values", path, number)
            try:
                scores.append(AnomalyScore(sequence_id=str(seq_id), values=values))
            except (TypeError, ValueError) as exc:
                raise DataFormatError(f"{path}: line {number}: {exc}") from exc
    return scores


def write_scores(scores: Iterable[AnomalyScore], path: PathLike) -> None:
    """Write score traces as one JSON object per line."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for score in scores:
            record = {"sequence_id": score.sequence_id, "values": score.values.tolist()}
            handle.write(json.dumps(record) + "\n")


def read_labels(path: PathLike) -> dict:
    """Read {sequence_id, value} label records into an id -> LabelValue map.

    Raises:
        DataFormatError: On malformed records, unknown values, or duplicates.
    """
    path = Path(path)
    labels: dict = {}
    with path.open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            record = _parse_line(path, number, line)
            seq_id = str(_require(record, "sequence_id", path, number))
            raw = _require(record, "value", path, number)
            try:
                value = LabelValue(raw)
            except ValueError as exc:
                raise DataFormatError(
                    f"{path}: line {number}: unknown label value {raw!r}"
                ) from exc
            if seq_id in labels:
                raise DataFormatError(f"{path}: line {number}: duplicate label for {seq_id!r}")
            labels[seq_id] = value
    return labels


def load_scores(path: PathLike, sequences: SequenceType[Sequence]) -> List[AnomalyScore]:
    """Read score traces and bind them against a known sequence set.

    Every record must name a known sequence and match its step count.  Scores
    come back in file order, which downstream code treats as pool order.  An
    empty file yields an empty list with a warning rather than an error.

    Raises:
        DataFormatError: On unknown ids, duplicate ids, or length mismatches.
    """
    path = Path(path)
    by_id = {seq.id: seq for seq in sequences}
    bound: List[AnomalyScore] = []
    seen = set()
    with path.open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            record = _parse_line(path, number, line)
            seq_id = str(_require(record, "sequence_id", path, number))
            values = _require(record, "values", path, number)
            if seq_id not in by_id:
                raise DataFormatError(f"{path}: line {number}: unknown sequence id {seq_id!r}")
            if seq_id in seen:
                raise DataFormatError(f"{path}: line {number}: duplicate score for {seq_id!r}")
            try:
                score = AnomalyScore(sequence_id=seq_id, values=values)
            except (TypeError, ValueError) as exc:
                raise DataFormatError(f"{path}: line {number}: {exc}") from exc
            if score.values.size != by_id[seq_id].n_steps:
                raise DataFormatError(
                    f"{path}: line {number}: score for {seq_id!r} has {score.values.size} "
                    f"values for {by_id[seq_id].n_steps} time steps"
                )
            seen.add(seq_id)
            bound.append(score)
    if not bound:
        warnings.warn(f"{path}: no score records found", stacklevel=2)
    return bound
