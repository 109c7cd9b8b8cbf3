"""Labelling session state: rounds, pending queue, labels, threshold refits.

A session wraps one candidate pool (sequences plus scores).  Rounds select
ids into a pending queue; every accepted label moves one sequence into the
query set; when the queue drains the threshold refits on all labels so far,
through the same fit used offline.  Every transition appends one line to a
JSONL event log, and replaying that log reconstructs the session state
exactly.
"""

from __future__ import annotations

import json
import threading
import warnings
from pathlib import Path
from typing import Dict, List, Optional, Sequence as SequenceType, Tuple

from ..core import (
    AnomalyScore,
    CandidateEntry,
    Label,
    LabelSource,
    LabelValue,
    QueryState,
    Rng,
    Sequence,
    move_to_query_set,
    sequence_statistic,
)
from ..evaluation import classify, prf1
from ..strategies import RoundRequest, StrategyKind, run_round
from ..thresholding import Threshold, fit_threshold, unsupervised_threshold

__all__ = ["LabelSession", "SessionConflict", "SessionNotFound"]


class SessionConflict(ValueError):
    """The request clashes with current session state (busy round, duplicate label)."""


class SessionNotFound(KeyError):
    """The named sequence is not available for this request."""

    def __str__(self) -> str:  # KeyError quotes its payload by default
        return str(self.args[0]) if self.args else ""


class LabelSession:
    """One labelling session over a fixed candidate pool."""

    def __init__(
        self,
        session_id: str,
        candidates: SequenceType[Tuple[Sequence, AnomalyScore]],
        log_path,
        seed: int = 0,
        _replaying: bool = False,
    ) -> None:
        if not candidates:
            raise ValueError("a session needs a non-empty candidate pool")
        entries = tuple(CandidateEntry(sequence=s, score=sc) for s, sc in candidates)
        self.session_id = session_id
        self.state = QueryState(candidates=entries, queried=(), round=0)
        self.tau_us = unsupervised_threshold([sc for _, sc in candidates])
        self.fitted: Optional[Threshold] = None
        self.pending: List[str] = []
        self.rng = Rng.from_seed(seed).child("session", session_id)
        self.log_path = Path(log_path)
        self._lock = threading.Lock()
        if not _replaying:
            self._append(
                {
                    "event": "session_started",
                    "session_id": session_id,
                    "seed": seed,
                    "tau_us": self.tau_us.value,
                    "candidates": [s.id for s, _ in candidates],
                }
            )

    # ------------------------------------------------------------------ log

    def _append(self, event: dict) -> None:
        with self.log_path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(event) + "\n")

    @classmethod
    def restore(
        cls,
        candidates: SequenceType[Tuple[Sequence, AnomalyScore]],
        log_path,
    ) -> "LabelSession":
        """Rebuild a session by replaying its event log against the same pool."""
        log_path = Path(log_path)
        events = [
            json.loads(line)
            for line in log_path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        if not events or events[0].get("event") != "session_started":
            raise ValueError(f"{log_path}: log does not start with session_started")
        head = events[0]
        session = cls(
            session_id=head["session_id"],
            candidates=candidates,
            log_path=log_path,
            seed=head.get("seed", 0),
            _replaying=True,
        )
        for event in events[1:]:
            kind = event.get("event")
            if kind == "round_started":
                # re-run the strategy so the rng stream advances exactly as it
                # did live; the log then doubles as an integrity check
                request = RoundRequest(
                    budget=int(event["budget"]),
                    strategy=StrategyKind(event["strategy"]),
                    rng=session.rng,
                    threshold_hint=None if session.fitted is None else session.fitted.value,
                )
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    selected = run_round(session.state, request)
                if selected != list(event["selected"]):
                    raise ValueError(
                        f"{log_path}: replayed round {event.get('round')} selected "
                        f"different sequences than the log records"
                    )
                session.pending = selected
            elif kind == "label_accepted":
                session._apply_label(event["sequence_id"], LabelValue(event["value"]))
            elif kind == "threshold_fitted":
                pass  # refit happens inside _apply_label, deterministically
            else:
                raise ValueError(f"{log_path}: unknown event {kind!r}")
        return session

    # ------------------------------------------------------------- queries

    def start_round(self, strategy: StrategyKind, budget: int) -> List[str]:
        """Select ids for labelling; conflicts while a round is still open."""
        with self._lock:
            if self.pending:
                raise SessionConflict(
                    f"round still open with {len(self.pending)} pending labels"
                )
            hint = self.fitted.value if self.fitted is not None else None
            request = RoundRequest(
                budget=budget, strategy=strategy, rng=self.rng, threshold_hint=hint
            )
            selected = run_round(self.state, request)
            self.pending = list(selected)
            self._append(
                {
                    "event": "round_started",
                    "round": self.state.round,
                    "strategy": strategy.value,
                    "budget": budget,
                    "selected": selected,
                }
            )
            return selected

    def get_query(self, sequence_id: str) -> Tuple[Sequence, AnomalyScore, float]:
        """Fetch the pending sequence, its score, and its statistic."""
        with self._lock:
            if sequence_id not in self.pending:
                raise SessionNotFound(f"sequence {sequence_id!r} is not pending")
            for entry in self.state.candidates:
                if entry.sequence.id == sequence_id:
                    return entry.sequence, entry.score, sequence_statistic(entry.score)
            raise SessionNotFound(f"sequence {sequence_id!r} is not in the pool")

    def _apply_label(self, sequence_id: str, value: LabelValue) -> None:
        """Shared move/refit path used by live submissions and log replay."""
        index = None
        for i, entry in enumerate(self.state.candidates):
            if entry.sequence.id == sequence_id:
                index = i
                break
        if index is None:
            raise SessionNotFound(f"sequence {sequence_id!r} is not in the pool")
        label = Label(value=value, source=LabelSource.HUMAN_ORACLE)
        self.state = move_to_query_set(self.state, index, label)
        self.pending.remove(sequence_id)
        if not self.pending:
            self.state = QueryState(
                candidates=self.state.candidates,
                queried=self.state.queried,
                round=self.state.round + 1,
            )
            self.fitted = fit_threshold(
                [(entry.score, entry.label) for entry in self.state.queried]
            )

    def submit_label(self, sequence_id: str, value: LabelValue) -> None:
        """Accept one label; finishing the queue refits the threshold."""
        with self._lock:
            if sequence_id in set(self.state.queried_ids()):
                raise SessionConflict(f"sequence {sequence_id!r} is already labelled")
            if sequence_id not in self.pending:
                raise SessionNotFound(f"sequence {sequence_id!r} is not pending")
            self._apply_label(sequence_id, value)
            self._append(
                {"event": "label_accepted", "sequence_id": sequence_id, "value": value.value}
            )
            if self.fitted is not None and not self.pending:
                self._append(
                    {
                        "event": "threshold_fitted",
                        "value": self.fitted.value,
                        "fitted_on": self.fitted.fitted_on,
                    }
                )

    # ------------------------------------------------------------- metrics

    def query_set_metrics(self) -> Optional[dict]:
        """Precision, recall, and F1 of the fitted threshold on the query set."""
        if self.fitted is None or not self.state.queried:
            return None
        queried = self.state.queried
        predictions = [classify(entry.score, self.fitted) for entry in queried]
        truths = [entry.label for entry in queried]
        precision, recall, f1 = prf1(predictions, truths)
        anomalous = sum(1 for t in truths if t.value is LabelValue.ANOMALOUS)
        return {
            "precision": precision,
            "recall": recall,
            "f1": f1,
            "anomalous": anomalous,
            "nominal": len(truths) - anomalous,
        }

    def summary(self) -> dict:
        metrics = self.query_set_metrics()
        return {
            "session_id": self.session_id,
            "round": self.state.round,
            "pending": list(self.pending),
            "labels_accepted": len(self.state.queried),
            "candidates_remaining": len(self.state.candidates),
            "thresholds": self.threshold_info(),
            "query_set_f1": None if metrics is None else metrics["f1"],
        }

    def threshold_info(self) -> dict:
        return {
            "unsupervised": self.tau_us.value,
            "fitted": None if self.fitted is None else self.fitted.value,
            "fitted_on": 0 if self.fitted is None else self.fitted.fitted_on,
        }
