"""Messaging domain records."""

from __future__ import annotations

from dataclasses import dataclass, field

TEXT = "text"
SONG_SHARE = "song_share"

MAX_BODY_CHARS = 4000
DEFAULT_GAP_THRESHOLD_S = 1800


@dataclass
class Message:
    seq: int
    sender: str
    server_time_ms: int
    client_msg_id: str
    kind: str  # TEXT | SONG_SHARE
    body: str | None = None
    share: dict | None = None  # {recommended_song_id, source_song_id, similarity}
    read_by: set = field(default_factory=set)

    def wire_dict(self) -> dict:
        """Wire form; read state is intentionally server-side only."""
        return {
            "seq": self.seq,
            "sender": self.sender,
            "server_time_ms": self.server_time_ms,
            "client_msg_id": self.client_msg_id,
            "kind": self.kind,
            "body": self.body,
            "share": self.share,
        }


@dataclass
class Thread:
    thread_id: str
    parent_id: str
    child_id: str
    messages: list = field(default_factory=list)

    @property
    def members(self) -> tuple:
        return (self.parent_id, self.child_id)

    def next_seq(self) -> int:
        return len(self.messages) + 1


@dataclass(frozen=True)
class SessionSpan:
    first_seq: int
    last_seq: int
    message_count: int


@dataclass(frozen=True)
class SessionReport:
    window_start_ms: int
    window_end_ms: int
    gap_threshold_s: float
    session_count: int
    sessions: tuple

    def as_dict(self) -> dict:
        return {
            "window_start_ms": self.window_start_ms,
            "window_end_ms": self.window_end_ms,
            "gap_threshold_s": self.gap_threshold_s,
            "session_count": self.session_count,
            "sessions": [
                {
                    "first_seq": s.first_seq,
                    "last_seq": s.last_seq,
                    "message_count": s.message_count,
                }
                for s in self.sessions
            ],
        }
