"""Server-side record of issued recommendations.

Every recommendation returned by a playback request is registered here;
a song share is only valid when it references one of these records and
the record is younger than the validity window (24 h). The full history
is also kept (and optionally persisted) for interaction reports.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass

from .engine import Recommendation

VALIDITY_WINDOW_S = 24 * 3600


@dataclass(frozen=True)
class IssuedRecommendation:
    issued_at_ms: int
    user_id: str
    source_song_id: str
    candidate_song_id: str
    similarity: float
    rank: int


class RecommendationRegistry:
    def __init__(self, clock=time.time, sink=None):
        # sink: optional callable(record dict) used for persistence
        self._clock = clock
        self._sink = sink
        self._lock = threading.Lock()
        self._records: list[IssuedRecommendation] = []
        # (user, source, candidate) -> latest issue time, for O(1) validation
        self._latest: dict[tuple, int] = {}
        # per-user history of request candidate-id sets, for the no-repeat window
        self._request_log: dict[str, list[list[str]]] = {}

    def now_ms(self) -> int:
        return int(self._clock() * 1000)

    def register(self, user_id: str, recommendations: list[Recommendation]) -> None:
        """Record one playback request's recommendation set."""
        issued_at = self.now_ms()
        with self._lock:
            for rec in recommendations:
                record = IssuedRecommendation(
                    issued_at_ms=issued_at,
                    user_id=user_id,
                    source_song_id=rec.source_song_id,
                    candidate_song_id=rec.candidate_song_id,
                    similarity=rec.similarity,
                    rank=rec.rank,
                )
                self._records.append(record)
                self._latest[(user_id, rec.source_song_id, rec.candidate_song_id)] = issued_at
                if self._sink is not None:
                    self._sink(
                        {
                            "ts_ms": issued_at,
                            "user_id": user_id,
                            "source_song_id": rec.source_song_id,
                            "candidate_song_id": rec.candidate_song_id,
                            "similarity": rec.similarity,
                            "rank": rec.rank,
                        }
                    )
            self._request_log.setdefault(user_id, []).append(
                [rec.candidate_song_id for rec in recommendations]
            )

    def load_record(self, record: IssuedRecommendation) -> None:
        """Replay one persisted record (no sink write-back)."""
        with self._lock:
            self._records.append(record)
            key = (record.user_id, record.source_song_id, record.candidate_song_id)
            self._latest[key] = max(self._latest.get(key, 0), record.issued_at_ms)

    def lookup_valid(self, user_id: str, source_song_id: str, candidate_song_id: str):
        """Latest matching record if it is within the validity window, else None."""
        issued_at = self._latest.get((user_id, source_song_id, candidate_song_id))
        if issued_at is None:
            return None
        if self.now_ms() - issued_at > VALIDITY_WINDOW_S * 1000:
            return None
        for record in reversed(self._records):
            if (
                record.user_id == user_id
                and record.source_song_id == source_song_id
                and record.candidate_song_id == candidate_song_id
                and record.issued_at_ms == issued_at
            ):
                return record
        return None

    def recent_candidates(self, user_id: str, window: int) -> set:
        """Candidate ids issued in the user's last ``window`` requests."""
        if window <= 0:
            return set()
        recent = self._request_log.get(user_id, [])[-window:]
        return {cid for request in recent for cid in request}

    def all_records(self) -> list[IssuedRecommendation]:
        with self._lock:
            return list(self._records)

    def was_recommended_by(self, user_id: str, song_id: str, before_ms: int) -> bool:
        """True when the song was issued to the user at or before the given time."""
        return any(
            record.user_id == user_id
            and record.candidate_song_id == song_id
            and record.issued_at_ms <= before_ms
            for record in self._records
        )
