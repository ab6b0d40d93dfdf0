"""Domain error hierarchy shared by all modules.

The HTTP layer maps these onto status codes; the CLI maps them onto
exit codes. Everything user-facing carries a short machine-readable
``code`` plus a human message.
"""


class DJFamError(Exception):
    """Base class for all domain errors."""

    code = "error"
    http_status = 400

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InvalidInputError(DJFamError):
    """Malformed or out-of-contract input (HTTP 400)."""

    code = "invalid_input"
    http_status = 400


class AuthError(DJFamError):
    """Missing, unknown, or expired credentials (HTTP 401)."""

    code = "auth_failed"
    http_status = 401


class ForbiddenError(DJFamError):
    """Authenticated but not allowed (HTTP 403)."""

    code = "forbidden"
    http_status = 403


class NotFoundError(DJFamError):
    """Referenced entity does not exist (HTTP 404)."""

    code = "not_found"
    http_status = 404


class AudioTooShortError(InvalidInputError):
    """Audio shorter than one analysis frame after resampling."""

    code = "audio_too_short"


class ShareIntegrityError(ForbiddenError):
    """Song share does not match any recommendation issued by the server."""

    code = "share_not_issued"
