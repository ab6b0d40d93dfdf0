"""Append-only JSONL record logs.

The dependency-free persistence default: one JSON object per line,
appended and flushed per record. Compaction rewrites the live snapshot
to a temp file and atomically renames it over the log, so readers never
observe a torn file. A relational store can be substituted behind the
same append/replay surface.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path


class RecordLog:
    def __init__(self, path: str | Path, fsync: bool = True):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fsync = fsync
        self._lock = threading.Lock()
        self._file = None

    def append(self, record: dict) -> None:
        line = json.dumps(record, separators=(",", ":"), sort_keys=True)
        with self._lock:
            if self._file is None:
                self._file = open(self.path, "a", encoding="utf-8")
            self._file.write(line + "\n")
            self._file.flush()
            if self._fsync:
                os.fsync(self._file.fileno())

    def replay(self) -> list[dict]:
        """All records in append order; tolerates a torn trailing line."""
        if not self.path.exists():
            return []
        records = []
        with open(self.path, encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                try:
                    records.append(json.loads(line))
                except json.JSONDecodeError:
                    break  # torn tail after a crash; everything before it is intact
        return records

    def compact(self, live_records: list[dict]) -> None:
        """Atomically replace the log with the given snapshot."""
        tmp_path = self.path.with_suffix(self.path.suffix + ".tmp")
        with self._lock:
            if self._file is not None:
                self._file.close()
                self._file = None
            with open(tmp_path, "w", encoding="utf-8") as handle:
                for record in live_records:
                    handle.write(json.dumps(record, separators=(",", ":"), sort_keys=True) + "\n")
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_path, self.path)

    def record_count(self) -> int:
        return len(self.replay())

    def close(self) -> None:
        with self._lock:
            if self._file is not None:
                self._file.close()
                self._file = None


def atomic_write_bytes(path: str | Path, payload: bytes) -> None:
    """Write a file via temp + rename so partial writes never surface."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_suffix(path.suffix + ".tmp")
    with open(tmp_path, "wb") as handle:
        handle.write(payload)
        handle.flush()
        os.fsync(handle.fileno())
    os.replace(tmp_path, path)
