"""The catalog store: songs, playlists, dyads, and the music-info graph.

Persistence is an append-only record log per entity kind (last record
per key wins on replay) with compaction when the log grows past twice
the live set. Mutations are serialized per store; reads see consistent
in-memory snapshots. Audio files are copied into the data directory at
ingestion and served from there.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import asdict
from pathlib import Path

import numpy as np

from ..errors import InvalidInputError, NotFoundError
from ..features import AudioClip, FeatureConfig, FeatureVector, featurize
from .models import Dyad, MusicInfo, Playlist, Song, OTHER_HITS_LIMIT, YEAR_RANGE, lyrics_excerpt
from .storage import RecordLog, atomic_write_bytes
from .wav import load_audio

DEFAULT_PLAYLIST_CAP = 100
COMPACT_RATIO = 2.0

MANIFEST_FIELDS = ("title", "artist", "release_year", "genre", "lyrics", "popularity_rank")


def song_identity(content_hash: str, metadata: dict) -> str:
    """Deterministic song id from (audio content hash, metadata)."""
    canonical = json.dumps(
        {key: metadata.get(key) for key in MANIFEST_FIELDS + ("cover_of",)},
        sort_keys=True,
    )
    digest = hashlib.sha256((content_hash + canonical).encode()).hexdigest()
    return "s" + digest[:16]


class CatalogStore:
    def __init__(
        self,
        data_dir: str | Path,
        feature_config: FeatureConfig | None = None,
        playlist_cap: int = DEFAULT_PLAYLIST_CAP,
        fsync: bool = True,
    ):
        self.data_dir = Path(data_dir)
        self.audio_dir = self.data_dir / "audio"
        self.feature_config = feature_config or FeatureConfig()
        self.playlist_cap = playlist_cap

        self._songs_log = RecordLog(self.data_dir / "songs.jsonl", fsync=fsync)
        self._playlists_log = RecordLog(self.data_dir / "playlists.jsonl", fsync=fsync)
        self._dyads_log = RecordLog(self.data_dir / "dyads.jsonl", fsync=fsync)

        self._lock = threading.RLock()
        self._songs: dict[str, Song] = {}
        self._playlists: dict[str, Playlist] = {}
        self._dyads: dict[str, Dyad] = {}
        self._dyads_by_code: dict[str, Dyad] = {}
        self.playlist_version = 0

        self._load()

    # -- loading / persistence ------------------------------------------

    def _load(self) -> None:
        song_records = self._songs_log.replay()
        for record in song_records:
            song = Song(**record)
            self._songs[song.song_id] = song
        if len(song_records) > COMPACT_RATIO * max(1, len(self._songs)):
            self._songs_log.compact([asdict(s) for s in self._songs.values()])

        playlist_records = self._playlists_log.replay()
        for record in playlist_records:
            self._playlists[record["user_id"]] = Playlist(**record)
        if len(playlist_records) > COMPACT_RATIO * max(1, len(self._playlists)):
            self._playlists_log.compact([asdict(p) for p in self._playlists.values()])

        for record in self._dyads_log.replay():
            dyad = Dyad(**record)
            self._dyads[dyad.dyad_id] = dyad
            self._dyads_by_code[dyad.code] = dyad

    # -- songs ------------------------------------------------------------

    def ingest_song(self, audio_path: str | Path, metadata: dict) -> tuple[str, bool]:
        """Ingest one WAV + metadata; returns (song_id, created).

        Idempotent: identical (audio content, metadata) maps to the same
        song id and never creates a second entry.
        """
        audio_path = Path(audio_path)
        try:
            payload = audio_path.read_bytes()
        except OSError as exc:
            raise InvalidInputError(f"cannot read audio file {audio_path}: {exc}") from exc

        content_hash = hashlib.sha256(payload).hexdigest()
        metadata = self._validated_metadata(metadata)
        song_id = song_identity(content_hash, metadata)

        with self._lock:
            if song_id in self._songs:
                return song_id, False
            self._check_cover_link(song_id, metadata.get("cover_of"))

        samples = load_audio(payload, self.feature_config.sample_rate)
        vector = featurize(AudioClip(samples, self.feature_config.sample_rate), self.feature_config)
        duration_s = samples.size / self.feature_config.sample_rate
        return self._persist_song(song_id, content_hash, payload, metadata, vector, duration_s)

    def ingest_prefeaturized(
        self,
        audio_path: str | Path,
        metadata: dict,
        content_hash: str,
        vector: FeatureVector,
        duration_s: float,
    ) -> tuple[str, bool]:
        """Ingest with a vector computed elsewhere (worker-pool path)."""
        metadata = self._validated_metadata(metadata)
        song_id = song_identity(content_hash, metadata)
        with self._lock:
            if song_id in self._songs:
                return song_id, False
            self._check_cover_link(song_id, metadata.get("cover_of"))
        payload = Path(audio_path).read_bytes()
        if hashlib.sha256(payload).hexdigest() != content_hash:
            raise InvalidInputError(f"audio file changed while ingesting: {audio_path}")
        return self._persist_song(song_id, content_hash, payload, metadata, vector, duration_s)

    def _persist_song(self, song_id, content_hash, payload, metadata, vector, duration_s):
        song = Song(
            song_id=song_id,
            title=metadata["title"],
            artist=metadata["artist"],
            release_year=metadata["release_year"],
            genre=metadata.get("genre", ""),
            duration_s=duration_s,
            lyrics=metadata.get("lyrics", ""),
            popularity_rank=metadata.get("popularity_rank", 1),
            cover_of=metadata.get("cover_of"),
            album_art_ref=metadata.get("album_art_ref", ""),
            feature_vector=vector.to_list(),
            config_fingerprint=vector.config_fingerprint,
            content_hash=content_hash,
        )
        with self._lock:
            if song_id in self._songs:
                return song_id, False
            atomic_write_bytes(self.audio_dir / f"{song_id}.wav", payload)
            self._songs_log.append(asdict(song))
            self._songs[song_id] = song
        return song_id, True

    def _validated_metadata(self, metadata: dict) -> dict:
        missing = [key for key in ("title", "artist", "release_year") if key not in metadata]
        if missing:
            raise InvalidInputError(f"metadata missing fields: {missing}")
        year = metadata["release_year"]
        if not isinstance(year, int) or not YEAR_RANGE[0] <= year <= YEAR_RANGE[1]:
            raise InvalidInputError(f"implausible release_year: {year!r}")
        rank = metadata.get("popularity_rank", 1)
        if not isinstance(rank, int) or rank < 1:
            raise InvalidInputError(f"popularity_rank must be an integer >= 1, got {rank!r}")
        return dict(metadata)

    def _check_cover_link(self, song_id: str, cover_of: str | None) -> None:
        if cover_of is None:
            return
        if cover_of == song_id:
            raise InvalidInputError("cover_of must not be self-referential")
        if cover_of not in self._songs:
            raise InvalidInputError(f"cover_of references unknown song: {cover_of}")
        # walk the chain defensively; links point at pre-existing songs,
        # so a cycle would imply a corrupted log
        seen = {song_id}
        cursor = cover_of
        while cursor is not None:
            if cursor in seen:
                raise InvalidInputError("cover_of chain forms a cycle")
            seen.add(cursor)
            cursor = self._songs[cursor].cover_of if cursor in self._songs else None

    def get_song(self, song_id: str) -> Song:
        song = self._songs.get(song_id)
        if song is None:
            raise NotFoundError(f"unknown song: {song_id}")
        return song

    def has_song(self, song_id: str) -> bool:
        return song_id in self._songs

    def all_songs(self) -> list[Song]:
        with self._lock:
            return list(self._songs.values())

    def audio_path(self, song_id: str) -> Path:
        self.get_song(song_id)
        return self.audio_dir / f"{song_id}.wav"

    def vector_of(self, song_id: str) -> np.ndarray:
        song = self.get_song(song_id)
        if song.feature_vector is None:
            raise InvalidInputError(f"song not featurized: {song_id}")
        return np.asarray(song.feature_vector, dtype=np.float64)

    def refeaturize(self, song_id: str, config: FeatureConfig | None = None) -> bool:
        """Recompute a song's vector under the given config; True if updated."""
        config = config or self.feature_config
        song = self.get_song(song_id)
        if song.config_fingerprint == config.fingerprint():
            return False
        samples = load_audio(self.audio_path(song_id), config.sample_rate)
        vector = featurize(AudioClip(samples, config.sample_rate), config)
        with self._lock:
            song.feature_vector = vector.to_list()
            song.config_fingerprint = vector.config_fingerprint
            self._songs_log.append(asdict(song))
            self.playlist_version += 1
        return True

    # -- playlists ---------------------------------------------------------

    def set_playlist(self, user_id: str, song_ids: list) -> Playlist:
        """Atomically replace a user's playlist."""
        song_ids = list(song_ids)
        if len(song_ids) > self.playlist_cap:
            raise InvalidInputError(
                f"playlist exceeds cap of {self.playlist_cap} ({len(song_ids)} given)"
            )
        seen = set()
        for song_id in song_ids:
            if song_id in seen:
                raise InvalidInputError(f"duplicate song in playlist: {song_id}")
            seen.add(song_id)
            if song_id not in self._songs:
                raise InvalidInputError(f"unknown song in playlist: {song_id}")
            if self._songs[song_id].feature_vector is None:
                raise InvalidInputError(f"song not featurized: {song_id}")
        playlist = Playlist(user_id=user_id, song_ids=song_ids)
        with self._lock:
            self._playlists_log.append(asdict(playlist))
            self._playlists[user_id] = playlist
            self.playlist_version += 1
        return playlist

    def playlist_of(self, user_id: str) -> Playlist:
        return self._playlists.get(user_id) or Playlist(user_id=user_id, song_ids=[])

    # -- dyads --------------------------------------------------------------

    def provision_dyad(self, dyad_id: str, code: str, parent_id: str, child_id: str) -> Dyad:
        if parent_id == child_id:
            raise InvalidInputError("dyad members must be distinct users")
        with self._lock:
            if dyad_id in self._dyads:
                raise InvalidInputError(f"dyad already exists: {dyad_id}")
            if code in self._dyads_by_code:
                raise InvalidInputError(f"dyad code already in use: {code}")
            dyad = Dyad(dyad_id=dyad_id, code=code, parent_id=parent_id, child_id=child_id)
            self._dyads_log.append(asdict(dyad))
            self._dyads[dyad_id] = dyad
            self._dyads_by_code[code] = dyad
        return dyad

    def get_dyad(self, dyad_id: str) -> Dyad:
        dyad = self._dyads.get(dyad_id)
        if dyad is None:
            raise NotFoundError(f"unknown dyad: {dyad_id}")
        return dyad

    def dyad_by_code(self, code: str) -> Dyad | None:
        return self._dyads_by_code.get(code)

    def all_dyads(self) -> list[Dyad]:
        with self._lock:
            return list(self._dyads.values())

    def dyad_of_user(self, user_id: str) -> Dyad:
        for dyad in self._dyads.values():
            if user_id in dyad.members:
                return dyad
        raise NotFoundError(f"user belongs to no dyad: {user_id}")

    # -- music info ----------------------------------------------------------

    def music_info(self, song_id: str, source_song_id: str | None = None) -> MusicInfo:
        song = self.get_song(song_id)
        excerpt, truncated = lyrics_excerpt(song.lyrics)

        siblings = [
            other
            for other in self._songs.values()
            if other.artist == song.artist and other.song_id != song.song_id
        ]
        siblings.sort(key=lambda s: (s.popularity_rank, s.song_id))
        other_hits = [s.summary() for s in siblings[:OTHER_HITS_LIMIT]]

        # a cover shows its original; otherwise list covers of this song
        covers: list = []
        original = None
        if song.cover_of is not None:
            original = self.get_song(song.cover_of).summary()
        else:
            covers = sorted(
                (other.summary() for other in self._songs.values() if other.cover_of == song_id),
                key=lambda s: s["song_id"],
            )

        source_summary = None
        if source_song_id is not None:
            source_summary = self.get_song(source_song_id).summary()

        return MusicInfo(
            song=song.summary(),
            lyrics_excerpt=excerpt,
            lyrics_truncated=truncated,
            source_song=source_summary,
            other_hits=other_hits,
            covers=covers,
            original=original,
        )

    def close(self) -> None:
        self._songs_log.close()
        self._playlists_log.close()
        self._dyads_log.close()
