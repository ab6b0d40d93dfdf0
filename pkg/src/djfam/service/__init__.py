from .app import create_app
from .auth import Session, SessionManager
from .events import EventBus
from .state import AppState, PlaybackEvent, PlaybackState

__all__ = [
    "AppState",
    "EventBus",
    "PlaybackEvent",
    "PlaybackState",
    "Session",
    "SessionManager",
    "create_app",
]
