"""Shared exception types with stable CLI exit codes."""


class OrbifusionError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ParseError(OrbifusionError):
    """Malformed input (code file, label string, CLI argument)."""

    exit_code = 2


class PreconditionError(OrbifusionError):
    """An operation was called outside its contract."""

    exit_code = 3


class GuardError(OrbifusionError):
    """An enumeration guard would be exceeded; refusing instead of truncating."""

    exit_code = 4


class VerificationError(OrbifusionError):
    """A verification suite found a violation."""

    exit_code = 5


class NotFound(OrbifusionError):
    """Bounded search exhausted; carries the bound that failed."""

    exit_code = 3

    def __init__(self, bound):
        super().__init__(f"no vector within bound {bound}")
        self.bound = bound
