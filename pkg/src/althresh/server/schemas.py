"""Request and response bodies for the labelling service."""

from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field

from ..core import LabelValue
from ..strategies import StrategyKind

__all__ = [
    "ThresholdInfo",
    "SessionSummary",
    "RoundBody",
    "RoundResponse",
    "QueryPayload",
    "LabelBody",
    "QuerySetMetrics",
    "ReportResponse",
    "ErrorBody",
]


class ThresholdInfo(BaseModel):
    """Current thresholds: the unsupervised fallback and the fit, if any."""

    unsupervised: float
    fitted: Optional[float] = None
    fitted_on: int = 0


class SessionSummary(BaseModel):
    """Session state as shown after every interaction."""

    session_id: str
    round: int
    pending: List[str]
    labels_accepted: int
    candidates_remaining: int
    thresholds: ThresholdInfo
    query_set_f1: Optional[float] = None


class RoundBody(BaseModel):
    """Ask for one querying round."""

    strategy: StrategyKind
    budget: int = Field(ge=1)


class RoundResponse(BaseModel):
    """Ids queued for labelling, in selection order."""

    round: int
    pending: List[str]


class QueryPayload(BaseModel):
    """Everything a labelling UI needs to show one queued sequence."""

    sequence_id: str
    duration_s: float
    channels: List[List[float]]
    score: List[float]
    statistic: float
    thresholds: ThresholdInfo


class LabelBody(BaseModel):
    """One human answer."""

    id: str
    value: LabelValue


class QuerySetMetrics(BaseModel):
    """Fit quality on the labelled query set itself."""

    precision: float
    recall: float
    f1: float
    anomalous: int
    nominal: int


class ReportResponse(BaseModel):
    """Session-level report: thresholds plus query-set metrics."""

    session_id: str
    rounds: int
    labels: int
    thresholds: ThresholdInfo
    query_set: Optional[QuerySetMetrics] = None


class ErrorBody(BaseModel):
    """Uniform error shape."""

    code: str
    message: str
