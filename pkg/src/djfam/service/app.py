"""The HTTP gateway.

JSON bodies, bearer token in the Authorization header; module errors map
onto 400/401/403/404 with an {code, message} JSON body. Push delivery
runs over a websocket at /v1/events (token via query parameter) with a
long-poll fallback at GET /v1/events/poll.
"""

from __future__ import annotations

import asyncio
import re

from fastapi import Depends, FastAPI, Header, Query, Request, Response, WebSocket
from fastapi.responses import JSONResponse
from starlette.websockets import WebSocketDisconnect

from ..errors import DJFamError, InvalidInputError, NotFoundError
from ..messaging import SONG_SHARE, TEXT
from .auth import Session
from .schemas import (
    EventsResponse,
    LoginRequest,
    LoginResponse,
    MessageModel,
    MessagesResponse,
    MusicInfoResponse,
    PlaybackRequest,
    PlaybackStateResponse,
    PlaylistResponse,
    PostMessageRequest,
    SessionReportResponse,
    ThreadStatusResponse,
)
from .state import AppState

LONG_POLL_MAX_WAIT_S = 30.0


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="djfam", version="0.1.0")
    app.state.djfam = state

    @app.exception_handler(DJFamError)
    async def domain_error_handler(_request: Request, exc: DJFamError):
        return JSONResponse(
            status_code=exc.http_status,
            content={"code": exc.code, "message": exc.message},
        )

    def current_session(authorization: str | None = Header(default=None)) -> Session:
        token = None
        if authorization and authorization.lower().startswith("bearer "):
            token = authorization[7:].strip()
        return state.sessions.validate(token)

    # -- auth ---------------------------------------------------------------

    @app.post("/v1/login", response_model=LoginResponse)
    def login(body: LoginRequest):
        session = state.sessions.login(body.dyad_code, body.role)
        return LoginResponse(
            token=session.token,
            user_id=session.user_id,
            dyad_id=session.dyad_id,
            role=session.role,
            expires_at_ms=session.expires_at_ms,
        )

    # -- playlists ------------------------------------------------------------

    def playlist_response(user_id: str) -> PlaylistResponse:
        playlist = state.catalog.playlist_of(user_id)
        songs = [state.catalog.get_song(sid).summary() for sid in playlist.song_ids]
        return PlaylistResponse(user_id=user_id, songs=songs)

    @app.get("/v1/playlist/self", response_model=PlaylistResponse)
    def playlist_self(session: Session = Depends(current_session)):
        return playlist_response(session.user_id)

    @app.get("/v1/playlist/partner", response_model=PlaylistResponse)
    def playlist_partner(session: Session = Depends(current_session)):
        dyad = state.catalog.get_dyad(session.dyad_id)
        return playlist_response(dyad.partner_of(session.user_id))

    # -- playback + recommendations --------------------------------------------

    @app.post("/v1/playback", response_model=PlaybackStateResponse)
    def playback(body: PlaybackRequest, session: Session = Depends(current_session)):
        playback_state = state.play(session.user_id, body.song_id)
        return PlaybackStateResponse(**playback_state.as_dict())

    # -- songs -------------------------------------------------------------------

    @app.get("/v1/songs/{song_id}/info", response_model=MusicInfoResponse)
    def song_info(
        song_id: str,
        source: str | None = Query(default=None),
        _session: Session = Depends(current_session),
    ):
        info = state.catalog.music_info(song_id, source_song_id=source)
        return MusicInfoResponse(**info.as_dict())

    @app.get("/v1/songs/{song_id}/audio")
    def song_audio(
        song_id: str,
        _session: Session = Depends(current_session),
        range_header: str | None = Header(default=None, alias="Range"),
    ):
        path = state.catalog.audio_path(song_id)
        if not path.exists():
            raise NotFoundError(f"audio missing for song: {song_id}")
        size = path.stat().st_size
        base_headers = {"Accept-Ranges": "bytes"}

        if range_header is None:
            return Response(
                content=path.read_bytes(),
                media_type="audio/wav",
                headers={**base_headers, "Content-Length": str(size)},
            )

        match = re.fullmatch(r"bytes=(\d*)-(\d*)", range_header.strip())
        if not match or (not match.group(1) and not match.group(2)):
            return Response(
                status_code=416,
                headers={**base_headers, "Content-Range": f"bytes */{size}"},
            )
        if match.group(1):
            start = int(match.group(1))
            end = int(match.group(2)) if match.group(2) else size - 1
        else:
            # suffix form: last N bytes
            suffix = int(match.group(2))
            start, end = max(0, size - suffix), size - 1
        end = min(end, size - 1)
        if start > end or start >= size:
            return Response(
                status_code=416,
                headers={**base_headers, "Content-Range": f"bytes */{size}"},
            )
        with open(path, "rb") as handle:
            handle.seek(start)
            chunk = handle.read(end - start + 1)
        return Response(
            status_code=206,
            content=chunk,
            media_type="audio/wav",
            headers={
                **base_headers,
                "Content-Range": f"bytes {start}-{end}/{size}",
                "Content-Length": str(len(chunk)),
            },
        )

    # -- messaging -----------------------------------------------------------------

    def wire_message(message) -> MessageModel:
        return MessageModel(**message.wire_dict())

    @app.post("/v1/messages", response_model=MessageModel)
    def post_message(body: PostMessageRequest, session: Session = Depends(current_session)):
        thread_id = session.dyad_id
        if body.kind == TEXT:
            if body.body is None:
                raise InvalidInputError("text message requires a body")
            message = state.messaging.post_message(
                thread_id, session.user_id, body.client_msg_id, body.body
            )
        elif body.kind == SONG_SHARE:
            if body.recommendation_ref is None:
                raise InvalidInputError("song_share requires recommendation_ref")
            message = state.messaging.share_recommendation(
                thread_id,
                session.user_id,
                body.recommendation_ref.source_song_id,
                body.recommendation_ref.recommended_song_id,
                body.client_msg_id,
            )
        else:
            raise InvalidInputError(f"unknown message kind: {body.kind!r}")
        return wire_message(message)

    @app.get("/v1/messages", response_model=MessagesResponse)
    def get_messages(
        since_seq: int = Query(default=0, ge=0),
        session: Session = Depends(current_session),
    ):
        messages = state.messaging.fetch(session.dyad_id, session.user_id, since_seq)
        return MessagesResponse(
            thread_id=session.dyad_id,
            messages=[wire_message(m) for m in messages],
        )

    @app.get("/v1/thread/status", response_model=ThreadStatusResponse)
    def thread_status(session: Session = Depends(current_session)):
        thread = state.messaging.get_thread(session.dyad_id)
        return ThreadStatusResponse(
            thread_id=session.dyad_id,
            last_seq=len(thread.messages),
            unread=state.messaging.unread_count(session.dyad_id, session.user_id),
        )

    # -- reports ----------------------------------------------------------------------

    @app.get("/v1/reports/sessions", response_model=SessionReportResponse)
    def sessions_report(
        from_ms: int = Query(alias="from"),
        to_ms: int = Query(alias="to"),
        gap: float | None = Query(default=None),
        session: Session = Depends(current_session),
    ):
        report = state.messaging.count_sessions(session.dyad_id, from_ms, to_ms, gap)
        return SessionReportResponse(**report.as_dict())

    # -- events: long-poll fallback ------------------------------------------------------

    @app.get("/v1/events/poll", response_model=EventsResponse)
    def poll_events(
        cursor: int = Query(default=0, ge=0),
        wait_s: float = Query(default=0.0, ge=0.0, le=LONG_POLL_MAX_WAIT_S),
        session: Session = Depends(current_session),
    ):
        if wait_s > 0:
            events, new_cursor = state.events.wait_for(session.user_id, cursor, wait_s)
        else:
            events, new_cursor = state.events.events_after(session.user_id, cursor)
        return EventsResponse(cursor=new_cursor, events=events)

    # -- events: websocket push channel ----------------------------------------------------

    @app.websocket("/v1/events")
    async def events_channel(websocket: WebSocket, token: str = Query(default="")):
        try:
            session = state.sessions.validate(token)
        except DJFamError:
            await websocket.close(code=4401)
            return
        await websocket.accept()
        try:
            cursor = int(websocket.query_params.get("cursor", "0"))
        except ValueError:
            cursor = 0
        user_id = session.user_id
        connection_id = state.events.connect(user_id)
        loop = asyncio.get_running_loop()
        disconnected = asyncio.Event()

        async def receiver():
            # inbound frames are ignored; this exists to notice disconnects
            try:
                while True:
                    await websocket.receive_text()
            except WebSocketDisconnect:
                disconnected.set()

        receive_task = asyncio.create_task(receiver())
        try:
            while not disconnected.is_set():
                events, cursor = await loop.run_in_executor(
                    None, state.events.wait_for, user_id, cursor, 0.25
                )
                for event in events:
                    await websocket.send_json(event)
        except (WebSocketDisconnect, RuntimeError):
            pass
        finally:
            receive_task.cancel()
            state.events.disconnect(user_id, connection_id)

    return app
