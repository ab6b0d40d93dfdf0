"""Per-user event channel with cursors.

Each user has a monotonically numbered in-memory event buffer. Live
connections (websocket) drain it as events arrive; the long-poll
fallback waits on the same buffer with a cursor, so the set of events
seen by push and poll clients is identical. Events are transient UI
signals; messages themselves are durable in the thread log.
"""

from __future__ import annotations

import itertools
import threading

BUFFER_CAP = 1000


class EventBus:
    def __init__(self, buffer_cap: int = BUFFER_CAP):
        self._cap = buffer_cap
        self._lock = threading.Lock()
        self._events: dict[str, list[tuple[int, dict]]] = {}
        self._next_seq: dict[str, int] = {}
        self._conditions: dict[str, threading.Condition] = {}
        self._connections: dict[str, set[int]] = {}
        self._conn_ids = itertools.count(1)

    def _condition(self, user_id: str) -> threading.Condition:
        with self._lock:
            if user_id not in self._conditions:
                self._conditions[user_id] = threading.Condition()
                self._events[user_id] = []
                self._next_seq[user_id] = 1
                self._connections[user_id] = set()
            return self._conditions[user_id]

    def publish(self, user_id: str, frame: dict) -> int:
        """Append one frame to the user's buffer; returns its cursor."""
        condition = self._condition(user_id)
        with condition:
            seq = self._next_seq[user_id]
            self._next_seq[user_id] = seq + 1
            buffer = self._events[user_id]
            buffer.append((seq, frame))
            if len(buffer) > self._cap:
                del buffer[: len(buffer) - self._cap]
            condition.notify_all()
            return seq

    def events_after(self, user_id: str, cursor: int) -> tuple[list[dict], int]:
        """(frames with seq > cursor, new cursor)."""
        condition = self._condition(user_id)
        with condition:
            pending = [(seq, frame) for seq, frame in self._events[user_id] if seq > cursor]
            new_cursor = pending[-1][0] if pending else max(cursor, self._next_seq[user_id] - 1)
            return [frame for _, frame in pending], new_cursor

    def wait_for(self, user_id: str, cursor: int, timeout_s: float) -> tuple[list[dict], int]:
        """Long-poll: block until events past the cursor exist or timeout."""
        condition = self._condition(user_id)
        with condition:
            if not any(seq > cursor for seq, _ in self._events[user_id]):
                condition.wait(timeout=timeout_s)
        return self.events_after(user_id, cursor)

    # -- presence (live push connections) ---------------------------------

    def connect(self, user_id: str) -> int:
        connection_id = next(self._conn_ids)
        self._condition(user_id)
        with self._lock:
            self._connections[user_id].add(connection_id)
        return connection_id

    def disconnect(self, user_id: str, connection_id: int) -> None:
        with self._lock:
            self._connections.get(user_id, set()).discard(connection_id)

    def is_connected(self, user_id: str) -> bool:
        with self._lock:
            return bool(self._connections.get(user_id))
