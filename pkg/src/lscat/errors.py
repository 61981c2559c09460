"""Exception hierarchy shared by every module."""


class LSCatError(Exception):
    """Base class for all errors raised by lscat."""

    def __init__(self, message: str = "", field: str | None = None):
        super().__init__(message)
        self.field = field

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.field}: {msg}" if self.field else msg


class EmptyInput(LSCatError, ValueError):
    pass


class DuplicateVertexInFace(LSCatError, ValueError):
    pass


class EmptySubset(LSCatError, ValueError):
    pass


class MismatchedEndpoints(LSCatError, ValueError):
    pass


class UnknownPoint(LSCatError, KeyError):
    pass


class CycleDetected(LSCatError, ValueError):
    pass


class DuplicatePoint(LSCatError, ValueError):
    pass


class NotAntichain(LSCatError, ValueError):
    pass


class LimitExceeded(LSCatError, RuntimeError):
    pass


class NotDominated(LSCatError, ValueError):
    pass


class NotBeatPoint(LSCatError, ValueError):
    pass


class NotASubcomplex(LSCatError, ValueError):
    pass


class NotOpen(LSCatError, ValueError):
    pass


class NotMonotone(LSCatError, ValueError):
    pass


class NotSimplicial(LSCatError, ValueError):
    pass


class InputSyntaxError(LSCatError, ValueError):
    """Malformed JSON text."""


class SchemaError(LSCatError, ValueError):
    """Well-formed JSON that does not match the document schema."""


class UnknownCommand(LSCatError, ValueError):
    pass


class VerificationError(LSCatError, AssertionError):
    """A certificate or witness failed independent re-validation."""
