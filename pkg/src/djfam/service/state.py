"""Application state shared by the HTTP service and the CLI.

One AppState owns the catalog store, the messaging service, the
recommendation registry, playback history, sessions, and the event bus.
The CLI's offline recommendation path and the gateway's playback path
both go through ``recommend_for`` so their output is identical by
construction.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

from ..catalog import CatalogStore, RecordLog
from ..errors import InvalidInputError
from ..features import FeatureConfig
from ..messaging import DEFAULT_GAP_THRESHOLD_S, MessagingService, SONG_SHARE
from ..recommend import (
    DEFAULT_K,
    IssuedRecommendation,
    Recommendation,
    RecommendationRegistry,
    rank_candidates,
)
from .auth import SessionManager
from .events import EventBus


@dataclass(frozen=True)
class PlaybackState:
    user_id: str
    now_playing: str
    started_at_ms: int
    recommendations: tuple

    def as_dict(self) -> dict:
        return {
            "user_id": self.user_id,
            "now_playing": self.now_playing,
            "started_at_ms": self.started_at_ms,
            "recommendations": [rec.as_dict() for rec in self.recommendations],
        }


@dataclass(frozen=True)
class PlaybackEvent:
    ts_ms: int
    user_id: str
    song_id: str


class AppState:
    def __init__(
        self,
        data_dir: str | Path,
        feature_config: FeatureConfig | None = None,
        playlist_cap: int = 100,
        recommend_k: int = DEFAULT_K,
        no_repeat_window: int = 0,
        raw_cosine: bool = False,
        gap_threshold_s: float = DEFAULT_GAP_THRESHOLD_S,
        clock=time.time,
        fsync: bool = True,
    ):
        self.data_dir = Path(data_dir)
        self.clock = clock
        self.recommend_k = recommend_k
        self.no_repeat_window = no_repeat_window
        self.raw_cosine = raw_cosine

        self.catalog = CatalogStore(
            self.data_dir,
            feature_config=feature_config,
            playlist_cap=playlist_cap,
            fsync=fsync,
        )

        self._recs_log = RecordLog(self.data_dir / "recs.jsonl", fsync=fsync)
        self.registry = RecommendationRegistry(clock=clock, sink=self._recs_log.append)
        for record in self._recs_log.replay():
            self.registry.load_record(
                IssuedRecommendation(
                    issued_at_ms=record["ts_ms"],
                    user_id=record["user_id"],
                    source_song_id=record["source_song_id"],
                    candidate_song_id=record["candidate_song_id"],
                    similarity=record["similarity"],
                    rank=record["rank"],
                )
            )

        self._playbacks_log = RecordLog(self.data_dir / "playbacks.jsonl", fsync=fsync)
        self.playbacks: list[PlaybackEvent] = [
            PlaybackEvent(record["ts_ms"], record["user_id"], record["song_id"])
            for record in self._playbacks_log.replay()
        ]

        self.events = EventBus()
        self.sessions = SessionManager(self.catalog, clock=clock)
        self.messaging = MessagingService(
            registry=self.registry,
            clock=clock,
            log=RecordLog(self.data_dir / "messages.jsonl", fsync=fsync),
            on_append=self._emit_message_events,
            gap_threshold_s=gap_threshold_s,
        )
        # one thread per dyad, thread_id == dyad_id
        for dyad in self.catalog.all_dyads():
            self.messaging.open_thread(dyad.dyad_id, dyad.parent_id, dyad.child_id)

    def now_ms(self) -> int:
        return int(self.clock() * 1000)

    # -- dyads / threads -----------------------------------------------------

    def provision_dyad(self, dyad_id: str, code: str, parent_id: str, child_id: str):
        dyad = self.catalog.provision_dyad(dyad_id, code, parent_id, child_id)
        self.messaging.open_thread(dyad.dyad_id, dyad.parent_id, dyad.child_id)
        return dyad

    def thread_id_of(self, user_id: str) -> str:
        return self.catalog.dyad_of_user(user_id).dyad_id

    # -- recommendation ------------------------------------------------------

    def recommend_for(
        self, user_id: str, source_song_id: str, k: int | None = None
    ) -> list[Recommendation]:
        """Rank the partner's playlist against the source song.

        Standardization scope is the union of both members' playlist
        vectors (sorted by id for deterministic float accumulation).
        """
        catalog = self.catalog
        catalog.get_song(source_song_id)
        dyad = catalog.dyad_of_user(user_id)
        partner = dyad.partner_of(user_id)

        own_ids = catalog.playlist_of(user_id).song_ids
        partner_ids = catalog.playlist_of(partner).song_ids
        if not partner_ids:
            return []

        scope_ids = sorted(set(own_ids) | set(partner_ids) | {source_song_id})
        fingerprints = {catalog.get_song(sid).config_fingerprint for sid in scope_ids}
        if len(fingerprints) > 1:
            raise InvalidInputError(
                "catalog holds vectors from mixed feature configs; run featurize"
            )
        vectors = {sid: catalog.vector_of(sid) for sid in scope_ids}

        corpus_ids = sorted(set(own_ids) | set(partner_ids))
        exclusions = self.registry.recent_candidates(user_id, self.no_repeat_window)
        return rank_candidates(
            source_song_id,
            vectors[source_song_id],
            {sid: vectors[sid] for sid in partner_ids},
            [vectors[sid] for sid in corpus_ids],
            k=self.recommend_k if k is None else k,
            exclusions=exclusions,
            raw_cosine=self.raw_cosine,
        )

    def play(self, user_id: str, song_id: str) -> PlaybackState:
        """Record playback, compute and register recommendations."""
        recommendations = self.recommend_for(user_id, song_id)
        ts_ms = self.now_ms()
        event = PlaybackEvent(ts_ms=ts_ms, user_id=user_id, song_id=song_id)
        self._playbacks_log.append(
            {"ts_ms": ts_ms, "user_id": user_id, "song_id": song_id}
        )
        self.playbacks.append(event)
        self.registry.register(user_id, recommendations)
        return PlaybackState(
            user_id=user_id,
            now_playing=song_id,
            started_at_ms=ts_ms,
            recommendations=tuple(recommendations),
        )

    # -- event emission --------------------------------------------------------

    def _emit_message_events(self, thread, message) -> None:
        frame = {
            "type": "message",
            "payload": {"thread_id": thread.thread_id, **message.wire_dict()},
        }
        for member in thread.members:
            self.events.publish(member, frame)

        partner = thread.parent_id if message.sender == thread.child_id else thread.child_id
        # song shares always notify; plain texts only reach a partner who
        # has no live connection to see the message frame directly
        if message.kind == SONG_SHARE or not self.events.is_connected(partner):
            notification = {
                "type": "notification",
                "payload": {
                    "kind": message.kind,
                    "thread_id": thread.thread_id,
                    "seq": message.seq,
                    "from_user": message.sender,
                },
            }
            if message.kind == SONG_SHARE:
                song_id = message.share["recommended_song_id"]
                notification["payload"]["song_id"] = song_id
                if self.catalog.has_song(song_id):
                    notification["payload"]["song_title"] = self.catalog.get_song(song_id).title
            self.events.publish(partner, notification)

    def close(self) -> None:
        self.catalog.close()
        self._recs_log.close()
        self._playbacks_log.close()
        self.messaging.close()
