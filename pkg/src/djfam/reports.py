"""Weekly dyad interaction reports.

Weeks are UTC ISO weeks (Monday 00:00 boundaries): a message at Sunday
23:59:59 belongs to the closing week. Per week we report messaging
sessions, song shares per member, and the number of distinct
recommended songs each member actually played.
"""

from __future__ import annotations

from datetime import date, datetime, timedelta, timezone

from .messaging import SONG_SHARE

CSV_HEADER = "week,sessions,parent_shares,child_shares,parent_listens,child_listens"

WEEK_MS = 7 * 86400 * 1000


def iso_week_monday(day: date) -> date:
    year, week, _ = day.isocalendar()
    return date.fromisocalendar(year, week, 1)


def week_label(monday: date) -> str:
    year, week, _ = monday.isocalendar()
    return f"{year}-W{week:02d}"


def _monday_ms(monday: date) -> int:
    moment = datetime(monday.year, monday.month, monday.day, tzinfo=timezone.utc)
    return int(moment.timestamp() * 1000)


def _first_event_ms(state, dyad_id: str) -> int | None:
    thread = state.messaging.get_thread(dyad_id)
    dyad = state.catalog.get_dyad(dyad_id)
    candidates = [m.server_time_ms for m in thread.messages]
    candidates += [p.ts_ms for p in state.playbacks if p.user_id in dyad.members]
    return min(candidates) if candidates else None


def weekly_report(state, dyad_id: str, weeks: int, start: date | None = None,
                  gap_threshold_s: float | None = None) -> list[dict]:
    dyad = state.catalog.get_dyad(dyad_id)
    thread = state.messaging.get_thread(dyad_id)

    if start is not None:
        anchor = iso_week_monday(start)
    else:
        first_ms = _first_event_ms(state, dyad_id)
        if first_ms is None:
            anchor = iso_week_monday(
                datetime.fromtimestamp(state.clock(), tz=timezone.utc).date()
            )
        else:
            anchor = iso_week_monday(
                datetime.fromtimestamp(first_ms / 1000.0, tz=timezone.utc).date()
            )

    rows = []
    for index in range(weeks):
        monday = anchor + timedelta(weeks=index)
        start_ms = _monday_ms(monday)
        end_ms = start_ms + WEEK_MS

        report = state.messaging.count_sessions(dyad_id, start_ms, end_ms, gap_threshold_s)

        shares = {dyad.parent_id: 0, dyad.child_id: 0}
        for message in thread.messages:
            if (
                message.kind == SONG_SHARE
                and start_ms <= message.server_time_ms < end_ms
            ):
                shares[message.sender] += 1

        listens = {dyad.parent_id: set(), dyad.child_id: set()}
        for playback in state.playbacks:
            if playback.user_id not in listens:
                continue
            if not start_ms <= playback.ts_ms < end_ms:
                continue
            if state.registry.was_recommended_by(
                playback.user_id, playback.song_id, playback.ts_ms
            ):
                listens[playback.user_id].add(playback.song_id)

        rows.append(
            {
                "week": week_label(monday),
                "sessions": report.session_count,
                "parent_shares": shares[dyad.parent_id],
                "child_shares": shares[dyad.child_id],
                "parent_listens": len(listens[dyad.parent_id]),
                "child_listens": len(listens[dyad.child_id]),
            }
        )
    return rows


def report_csv(rows: list[dict]) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            f"{row['week']},{row['sessions']},{row['parent_shares']},"
            f"{row['child_shares']},{row['parent_listens']},{row['child_listens']}"
        )
    return "\n".join(lines) + "\n"
