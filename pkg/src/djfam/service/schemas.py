"""Request/response models for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, Field


class LoginRequest(BaseModel):
    dyad_code: str
    role: str


class LoginResponse(BaseModel):
    token: str
    user_id: str
    dyad_id: str
    role: str
    expires_at_ms: int


class SongSummary(BaseModel):
    song_id: str
    title: str
    artist: str
    release_year: int
    genre: str
    duration_s: float
    popularity_rank: int
    album_art_ref: str


class PlaylistResponse(BaseModel):
    user_id: str
    songs: list[SongSummary]


class RecommendationModel(BaseModel):
    source_song_id: str
    candidate_song_id: str
    similarity: float
    rank: int


class PlaybackRequest(BaseModel):
    song_id: str


class PlaybackStateResponse(BaseModel):
    user_id: str
    now_playing: str
    started_at_ms: int
    recommendations: list[RecommendationModel]


class MusicInfoResponse(BaseModel):
    song: SongSummary
    lyrics_excerpt: str
    lyrics_truncated: bool
    source_song: SongSummary | None = None
    other_hits: list[SongSummary]
    covers: list[SongSummary]
    original: SongSummary | None = None


class RecommendationRef(BaseModel):
    source_song_id: str
    recommended_song_id: str


class PostMessageRequest(BaseModel):
    client_msg_id: str
    kind: str  # "text" | "song_share"
    body: str | None = None
    recommendation_ref: RecommendationRef | None = None


class ShareInfo(BaseModel):
    recommended_song_id: str
    source_song_id: str
    similarity: float


class MessageModel(BaseModel):
    seq: int
    sender: str
    server_time_ms: int
    client_msg_id: str
    kind: str
    body: str | None = None
    share: ShareInfo | None = None


class MessagesResponse(BaseModel):
    thread_id: str
    messages: list[MessageModel]


class ThreadStatusResponse(BaseModel):
    thread_id: str
    last_seq: int
    unread: int


class SessionSpanModel(BaseModel):
    first_seq: int
    last_seq: int
    message_count: int


class SessionReportResponse(BaseModel):
    window_start_ms: int
    window_end_ms: int
    gap_threshold_s: float
    session_count: int
    sessions: list[SessionSpanModel]


class EventsResponse(BaseModel):
    cursor: int
    events: list[dict] = Field(default_factory=list)


class ErrorResponse(BaseModel):
    code: str
    message: str
