"""Asynchronous dyad chat with song shares and read tracking.

Appends to a thread are serialized under a per-thread lock; sequence
numbers are dense from 1. Duplicate delivery is absorbed by a
(sender, client_msg_id) index: at-least-once ingress plus idempotent
de-dup yields exactly-once appearance. Song shares must reference a
recommendation the server actually issued to the sender; the share is
stamped with the recorded similarity, never a client-supplied one.
"""

from __future__ import annotations

import threading
import time

from ..errors import ForbiddenError, InvalidInputError, NotFoundError, ShareIntegrityError
from ..recommend.registry import RecommendationRegistry
from .models import (
    DEFAULT_GAP_THRESHOLD_S,
    MAX_BODY_CHARS,
    Message,
    SessionReport,
    SONG_SHARE,
    TEXT,
    Thread,
)
from .sessions import segment_sessions


class MessagingService:
    def __init__(
        self,
        registry: RecommendationRegistry,
        clock=time.time,
        log=None,
        on_append=None,
        gap_threshold_s: float = DEFAULT_GAP_THRESHOLD_S,
    ):
        # log: RecordLog-compatible sink for persistence; on_append:
        # callback(thread, message) fired after the append is durable
        self._registry = registry
        self._clock = clock
        self._log = log
        self._on_append = on_append
        self.gap_threshold_s = gap_threshold_s
        self._threads: dict[str, Thread] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._dedup: dict[tuple, Message] = {}
        self._global_lock = threading.Lock()
        if log is not None:
            self._replay(log.replay())

    def _replay(self, records: list[dict]) -> None:
        for record in records:
            if record.get("rtype") == "message":
                thread = self._threads.get(record["thread_id"])
                if thread is None:
                    continue
                message = Message(
                    seq=record["seq"],
                    sender=record["sender"],
                    server_time_ms=record["server_time_ms"],
                    client_msg_id=record["client_msg_id"],
                    kind=record["kind"],
                    body=record.get("body"),
                    share=record.get("share"),
                    read_by={record["sender"]},
                )
                thread.messages.append(message)
                self._dedup[(thread.thread_id, message.sender, message.client_msg_id)] = message
            elif record.get("rtype") == "thread":
                self._ensure_thread(
                    record["thread_id"], record["parent_id"], record["child_id"], persist=False
                )
            elif record.get("rtype") == "read":
                thread = self._threads.get(record["thread_id"])
                if thread is None:
                    continue
                for message in thread.messages:
                    if record["from_seq"] <= message.seq <= record["to_seq"]:
                        message.read_by.add(record["user_id"])

    def _ensure_thread(self, thread_id, parent_id, child_id, persist=True) -> Thread:
        with self._global_lock:
            thread = self._threads.get(thread_id)
            if thread is None:
                thread = Thread(thread_id=thread_id, parent_id=parent_id, child_id=child_id)
                self._threads[thread_id] = thread
                self._locks[thread_id] = threading.Lock()
                if persist and self._log is not None:
                    self._log.append(
                        {
                            "rtype": "thread",
                            "thread_id": thread_id,
                            "parent_id": parent_id,
                            "child_id": child_id,
                        }
                    )
            return thread

    def open_thread(self, thread_id: str, parent_id: str, child_id: str) -> Thread:
        """Create (or return) the single thread of a dyad."""
        return self._ensure_thread(thread_id, parent_id, child_id)

    def get_thread(self, thread_id: str) -> Thread:
        thread = self._threads.get(thread_id)
        if thread is None:
            raise NotFoundError(f"unknown thread: {thread_id}")
        return thread

    def _require_member(self, thread: Thread, user_id: str) -> None:
        if user_id not in thread.members:
            raise ForbiddenError(f"user {user_id} is not a member of thread {thread.thread_id}")

    def now_ms(self) -> int:
        return int(self._clock() * 1000)

    # -- posting -----------------------------------------------------------

    def post_message(self, thread_id: str, sender: str, client_msg_id: str, body: str) -> Message:
        if not body:
            raise InvalidInputError("message body must be non-empty")
        if len(body) > MAX_BODY_CHARS:
            raise InvalidInputError(f"message body exceeds {MAX_BODY_CHARS} characters")
        return self._append(thread_id, sender, client_msg_id, TEXT, body=body)

    def share_recommendation(
        self,
        thread_id: str,
        sender: str,
        source_song_id: str,
        recommended_song_id: str,
        client_msg_id: str,
    ) -> Message:
        thread = self.get_thread(thread_id)
        self._require_member(thread, sender)
        # dedup check happens before integrity so an idempotent retry of a
        # share whose record has since expired still succeeds
        existing = self._dedup.get((thread_id, sender, client_msg_id))
        if existing is not None:
            return existing
        record = self._registry.lookup_valid(sender, source_song_id, recommended_song_id)
        if record is None:
            raise ShareIntegrityError(
                "share does not match a recommendation issued to this user "
                f"within the validity window: {source_song_id} -> {recommended_song_id}"
            )
        share = {
            "recommended_song_id": recommended_song_id,
            "source_song_id": source_song_id,
            "similarity": record.similarity,
        }
        return self._append(thread_id, sender, client_msg_id, SONG_SHARE, share=share)

    def _append(self, thread_id, sender, client_msg_id, kind, body=None, share=None) -> Message:
        thread = self.get_thread(thread_id)
        self._require_member(thread, sender)
        if not client_msg_id:
            raise InvalidInputError("client_msg_id must be non-empty")
        with self._locks[thread_id]:
            key = (thread_id, sender, client_msg_id)
            existing = self._dedup.get(key)
            if existing is not None:
                return existing
            message = Message(
                seq=thread.next_seq(),
                sender=sender,
                server_time_ms=self.now_ms(),
                client_msg_id=client_msg_id,
                kind=kind,
                body=body,
                share=share,
                read_by={sender},  # the sender has trivially seen their own post
            )
            if self._log is not None:
                self._log.append({"rtype": "message", "thread_id": thread_id, **message.wire_dict()})
            thread.messages.append(message)
            self._dedup[key] = message
        if self._on_append is not None:
            self._on_append(thread, message)
        return message

    # -- reading -----------------------------------------------------------

    def fetch(self, thread_id: str, requester: str, since_seq: int = 0) -> list[Message]:
        """Messages with seq > since_seq, in order; marks them read by requester."""
        thread = self.get_thread(thread_id)
        self._require_member(thread, requester)
        with self._locks[thread_id]:
            fetched = [m for m in thread.messages if m.seq > since_seq]
            newly_read = [m for m in fetched if requester not in m.read_by]
            for message in newly_read:
                message.read_by.add(requester)
            if newly_read and self._log is not None:
                self._log.append(
                    {
                        "rtype": "read",
                        "thread_id": thread_id,
                        "user_id": requester,
                        "from_seq": newly_read[0].seq,
                        "to_seq": newly_read[-1].seq,
                    }
                )
        return fetched

    def unread_count(self, thread_id: str, requester: str) -> int:
        thread = self.get_thread(thread_id)
        self._require_member(thread, requester)
        return sum(1 for m in thread.messages if requester not in m.read_by)

    # -- analytics -----------------------------------------------------------

    def count_sessions(
        self,
        thread_id: str,
        window_start_ms: int,
        window_end_ms: int,
        gap_threshold_s: float | None = None,
    ) -> SessionReport:
        thread = self.get_thread(thread_id)
        threshold = self.gap_threshold_s if gap_threshold_s is None else gap_threshold_s
        return segment_sessions(thread.messages, window_start_ms, window_end_ms, threshold)

    def close(self) -> None:
        if self._log is not None:
            self._log.close()
