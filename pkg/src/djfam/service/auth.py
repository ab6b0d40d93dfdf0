"""Token sessions for dyad members.

Tokens are 128-bit random hex, valid 24 h. Logging in again issues a
fresh token; earlier tokens stay valid until they expire.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass

from ..errors import AuthError, InvalidInputError

TOKEN_TTL_S = 24 * 3600
ROLES = ("parent", "child")


@dataclass(frozen=True)
class Session:
    token: str
    user_id: str
    dyad_id: str
    role: str
    expires_at_ms: int


class SessionManager:
    def __init__(self, catalog, clock=time.time):
        self._catalog = catalog
        self._clock = clock
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def now_ms(self) -> int:
        return int(self._clock() * 1000)

    def login(self, dyad_code: str, role: str) -> Session:
        if role not in ROLES:
            raise InvalidInputError(f"role must be one of {ROLES}, got {role!r}")
        dyad = self._catalog.dyad_by_code(dyad_code)
        if dyad is None:
            raise AuthError("unknown dyad code")
        session = Session(
            token=secrets.token_hex(16),
            user_id=dyad.user_for_role(role),
            dyad_id=dyad.dyad_id,
            role=role,
            expires_at_ms=self.now_ms() + TOKEN_TTL_S * 1000,
        )
        with self._lock:
            self._sessions[session.token] = session
        return session

    def validate(self, token: str | None) -> Session:
        if not token:
            raise AuthError("missing bearer token")
        session = self._sessions.get(token)
        if session is None:
            raise AuthError("unknown token")
        if self.now_ms() >= session.expires_at_ms:
            with self._lock:
                self._sessions.pop(token, None)
            raise AuthError("token expired")
        return session
