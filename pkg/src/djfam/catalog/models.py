"""Catalog domain records: songs, playlists, dyads, music info."""

from __future__ import annotations

from dataclasses import dataclass, field

LYRICS_EXCERPT_LINES = 4
OTHER_HITS_LIMIT = 3
YEAR_RANGE = (1900, 2100)


@dataclass
class Song:
    song_id: str
    title: str
    artist: str
    release_year: int
    genre: str
    duration_s: float
    lyrics: str = ""
    popularity_rank: int = 1
    cover_of: str | None = None
    album_art_ref: str = ""
    feature_vector: list | None = None
    config_fingerprint: str | None = None
    content_hash: str | None = None

    def summary(self) -> dict:
        return {
            "song_id": self.song_id,
            "title": self.title,
            "artist": self.artist,
            "release_year": self.release_year,
            "genre": self.genre,
            "duration_s": self.duration_s,
            "popularity_rank": self.popularity_rank,
            "album_art_ref": self.album_art_ref,
        }


@dataclass
class Playlist:
    user_id: str
    song_ids: list = field(default_factory=list)


@dataclass
class Dyad:
    dyad_id: str
    code: str
    parent_id: str
    child_id: str

    @property
    def members(self) -> tuple:
        return (self.parent_id, self.child_id)

    def role_of(self, user_id: str) -> str | None:
        if user_id == self.parent_id:
            return "parent"
        if user_id == self.child_id:
            return "child"
        return None

    def user_for_role(self, role: str) -> str | None:
        if role == "parent":
            return self.parent_id
        if role == "child":
            return self.child_id
        return None

    def partner_of(self, user_id: str) -> str | None:
        if user_id == self.parent_id:
            return self.child_id
        if user_id == self.child_id:
            return self.parent_id
        return None


def lyrics_excerpt(lyrics: str) -> tuple[str, bool]:
    """First 4 lines plus a flag telling the client to offer 'Read More'."""
    lines = lyrics.splitlines()
    excerpt = "\n".join(lines[:LYRICS_EXCERPT_LINES])
    return excerpt, len(lines) > LYRICS_EXCERPT_LINES


@dataclass
class MusicInfo:
    song: dict
    lyrics_excerpt: str
    lyrics_truncated: bool
    source_song: dict | None
    other_hits: list
    covers: list
    original: dict | None

    def as_dict(self) -> dict:
        return {
            "song": self.song,
            "lyrics_excerpt": self.lyrics_excerpt,
            "lyrics_truncated": self.lyrics_truncated,
            "source_song": self.source_song,
            "other_hits": self.other_hits,
            "covers": self.covers,
            "original": self.original,
        }
