"""Error types shared across the registry and the management plane."""


class RelayError(Exception):
    """Base class; ``code`` is the stable machine-readable identifier."""

    code = "ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class OriginForbidden(RelayError):
    code = "ORIGIN_FORBIDDEN"


class TokenNotFound(RelayError):
    code = "NOT_FOUND"


class JobConflict(RelayError):
    code = "CONFLICT"


class AlreadyMapped(RelayError):
    code = "ALREADY_MAPPED"


class PrivilegedPort(RelayError):
    code = "PRIVILEGED_PORT"


class BadPort(RelayError):
    code = "BAD_PORT"


class LabelsExhausted(RelayError):
    code = "EXHAUSTED"
