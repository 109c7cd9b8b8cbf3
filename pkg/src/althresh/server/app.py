"""FastAPI app over one labelling session."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import __version__
from .schemas import (
    ErrorBody,
    LabelBody,
    QueryPayload,
    QuerySetMetrics,
    ReportResponse,
    RoundBody,
    RoundResponse,
    SessionSummary,
    ThresholdInfo,
)
from .session import LabelSession, SessionConflict, SessionNotFound

__all__ = ["create_app"]

_ERROR_RESPONSES = {
    404: {"model": ErrorBody},
    409: {"model": ErrorBody},
    422: {"model": ErrorBody},
}


def create_app(session: LabelSession) -> FastAPI:
    """Wire the HTTP surface around a session.

    Errors come back as {code, message}: `not_found` (404) for unknown or
    not-pending sequences, `conflict` (409) for requests clashing with
    session state, `invalid` (422) for malformed bodies.
    """
    app = FastAPI(title="althresh labelling service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(SessionConflict)
    async def _conflict(request: Request, exc: SessionConflict) -> JSONResponse:
        return JSONResponse(status_code=409, content={"code": "conflict", "message": str(exc)})

    @app.exception_handler(SessionNotFound)
    async def _not_found(request: Request, exc: SessionNotFound) -> JSONResponse:
        return JSONResponse(status_code=404, content={"code": "not_found", "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _invalid(request: Request, exc: RequestValidationError) -> JSONResponse:
        first = exc.errors()[0] if exc.errors() else {}
        where = ".".join(str(part) for part in first.get("loc", ()))
        message = f"{where}: {first.get('msg', 'invalid request')}" if where else "invalid request"
        return JSONResponse(status_code=422, content={"code": "invalid", "message": message})

    @app.get("/session", response_model=SessionSummary)
    def get_session() -> SessionSummary:
        return SessionSummary(**session.summary())

    @app.post("/session/rounds", response_model=RoundResponse, responses=_ERROR_RESPONSES)
    def start_round(body: RoundBody) -> RoundResponse:
        selected = session.start_round(body.strategy, body.budget)
        return RoundResponse(round=session.state.round, pending=selected)

    @app.get("/queries/{sequence_id}", response_model=QueryPayload, responses=_ERROR_RESPONSES)
    def get_query(sequence_id: str) -> QueryPayload:
        sequence, score, statistic = session.get_query(sequence_id)
        return QueryPayload(
            sequence_id=sequence.id,
            duration_s=sequence.duration_s,
            channels=sequence.channels.tolist(),
            score=score.values.tolist(),
            statistic=statistic,
            thresholds=ThresholdInfo(**session.threshold_info()),
        )

    @app.post("/labels", response_model=SessionSummary, responses=_ERROR_RESPONSES)
    def submit_label(body: LabelBody) -> SessionSummary:
        session.submit_label(body.id, body.value)
        return SessionSummary(**session.summary())

    @app.get("/report", response_model=ReportResponse)
    def get_report() -> ReportResponse:
        metrics = session.query_set_metrics()
        return ReportResponse(
            session_id=session.session_id,
            rounds=session.state.round,
            labels=len(session.state.queried),
            thresholds=ThresholdInfo(**session.threshold_info()),
            query_set=None if metrics is None else QuerySetMetrics(**metrics),
        )

    return app
