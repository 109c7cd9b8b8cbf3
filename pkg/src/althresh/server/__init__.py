"""HTTP labelling service: one session, strategy-driven rounds, human labels."""

from .app import create_app
from .session import LabelSession, SessionConflict, SessionNotFound

__all__ = ["create_app", "LabelSession", "SessionConflict", "SessionNotFound"]
