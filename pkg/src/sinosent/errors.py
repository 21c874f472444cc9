"""Error classes shared across the pipeline.

Each class maps to a CLI exit code so callers can distinguish
misconfiguration from bad data from a misbehaving remote model.
"""


class SinosentError(Exception):
    """Base class for all pipeline errors."""

    exit_code = 1


class UsageError(SinosentError):
    """Invalid configuration or arguments (exit code 2)."""

    exit_code = 2


class InputError(SinosentError):
    """Unreadable or structurally invalid input file (exit code 3)."""

    exit_code = 3


class RemoteError(SinosentError):
    """Remote classifier failed after retries (exit code 4)."""

    exit_code = 4


class ProtocolError(RemoteError):
    """Remote classifier answered with a malformed payload (exit code 4)."""

    exit_code = 4
