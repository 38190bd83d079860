EXIT_USAGE = 2
EXIT_INVARIANT = 3


class CreaSimException(Exception):
    """Base exception; carries the process exit code the CLI should return."""

    exit_code: int = EXIT_USAGE

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigurationException(CreaSimException):
    """Exception raised when a configuration violates its schema."""

    def __init__(self, detail: str, key_path: str = ""):
        super().__init__(f"{key_path}: {detail}" if key_path else detail)
        self.key_path = key_path


class UsageException(CreaSimException):
    """Exception raised on invalid flags or an incomplete run directory."""


class InvariantViolationException(CreaSimException):
    """Exception raised when a run breaks one of its runtime invariants."""

    exit_code = EXIT_INVARIANT


class EmptyArtefactException(CreaSimException, ValueError):
    """Exception raised when coordinates of the empty artefact are requested."""

    def __init__(self, detail: str = "empty artefact has no coordinates"):
        super().__init__(detail)


class SpaceTooLargeException(CreaSimException, ValueError):
    """Exception raised when a space exceeds the enumeration cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"space too large to enumerate ({size} > {cap})")
        self.size = size
        self.cap = cap


class ConfigShapeException(CreaSimException, ValueError):
    """Exception raised when configurations cannot be compared position by position."""


class GraphSizeException(CreaSimException, ValueError):
    """Exception raised when a network cannot hold its seed graph."""


class InsufficientTailException(CreaSimException, ValueError):
    """Exception raised when a degree tail is too short to fit."""
