"""Messaging-session segmentation.

A session is a maximal run of messages (either sender) whose
inter-arrival gaps stay at or below the threshold; a gap above it starts
a new session. Sessions partition the window's messages.
"""

from __future__ import annotations

from .models import Message, SessionReport, SessionSpan


def segment_sessions(
    messages: list[Message],
    window_start_ms: int,
    window_end_ms: int,
    gap_threshold_s: float,
) -> SessionReport:
    if window_end_ms < window_start_ms:
        raise ValueError("window end precedes window start")

    in_window = [
        m for m in messages if window_start_ms <= m.server_time_ms < window_end_ms
    ]
    in_window.sort(key=lambda m: m.seq)

    spans: list[SessionSpan] = []
    gap_ms = gap_threshold_s * 1000.0
    run: list[Message] = []
    for message in in_window:
        if run and message.server_time_ms - run[-1].server_time_ms > gap_ms:
            spans.append(SessionSpan(run[0].seq, run[-1].seq, len(run)))
            run = []
        run.append(message)
    if run:
        spans.append(SessionSpan(run[0].seq, run[-1].seq, len(run)))

    return SessionReport(
        window_start_ms=window_start_ms,
        window_end_ms=window_end_ms,
        gap_threshold_s=gap_threshold_s,
        session_count=len(spans),
        sessions=tuple(spans),
    )
