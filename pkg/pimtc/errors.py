"""Exception classes for pimtc."""

from enum import IntEnum


class ExitCode(IntEnum):
    """Process exit codes used by the command-line front end."""

    SUCCESS = 0
    FAILURE = 1
    USAGE = 2
    INPUT = 3
    CONFIG = 4


class Error(Exception):
    """Base class for exceptions in this module."""

    exit_code: ExitCode = ExitCode.FAILURE


class EdgeListParseError(Error):
    """
    Exception raised for malformed lines in an edge-list file.
    Every offending line is collected before raising.
    """

    exit_code = ExitCode.INPUT

    def __init__(self, line_errors: list[tuple[int, str]]) -> None:
        self.line_errors = line_errors

    def __str__(self) -> str:
        message = (
            "Error parsing edge list.\n\n"
            "Please ensure all lines follow the format: <source> <target>\n\n"
            "The following lines raised errors:\n"
        )
        message += "\n".join(
            f"  line {number}: {text!r}" for number, text in self.line_errors
        )
        return message


class EdgeListReadError(Error):
    """Exception raised when an edge-list file cannot be read."""

    exit_code = ExitCode.INPUT

    def __init__(self, path: str, reason: str) -> None:
        self.path = path
        self.reason = reason

    def __str__(self) -> str:
        return f"Unable to read edge list '{self.path}': {self.reason}"


class GraphInvariantError(Error):
    """Exception raised when a graph violates its structural invariants."""

    exit_code = ExitCode.INPUT


class UndefinedInputError(Error):
    """Exception raised when a metric is undefined for the given input."""

    exit_code = ExitCode.CONFIG


class ConfigError(Error):
    """
    Exception raised for invalid slice, capacity or cost-model settings.
    """

    exit_code = ExitCode.CONFIG


class CapacityError(ConfigError):
    """Exception raised when an input exceeds a hard size guard."""

    def __init__(self, what: str, size: int, limit: int) -> None:
        self.what = what
        self.size = size
        self.limit = limit

    def __str__(self) -> str:
        return (
            f"{self.what} refuses input of size {self.size}: "
            f"limit is {self.limit}"
        )


class SimulationStateError(Error):
    """Exception raised when the simulated memory array breaks an invariant."""

    exit_code = ExitCode.FAILURE
