from .models import (
    DEFAULT_GAP_THRESHOLD_S,
    MAX_BODY_CHARS,
    Message,
    SessionReport,
    SessionSpan,
    SONG_SHARE,
    TEXT,
    Thread,
)
from .service import MessagingService
from .sessions import segment_sessions

__all__ = [
    "DEFAULT_GAP_THRESHOLD_S",
    "MAX_BODY_CHARS",
    "Message",
    "MessagingService",
    "SessionReport",
    "SessionSpan",
    "SONG_SHARE",
    "TEXT",
    "Thread",
    "segment_sessions",
]
