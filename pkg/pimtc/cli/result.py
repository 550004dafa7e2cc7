"""Command result handling for pimtc CLI."""

from dataclasses import dataclass
from enum import Enum
from typing import Protocol

from pimtc.config import LOGGER
from pimtc.errors import Error, ExitCode


class MessageType(Enum):
    """Types of messages that can be logged."""

    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    SUCCESS = "success"


class Reportable(Protocol):
    """Anything a command hands back that can be written as a JSON report."""

    def to_dict(self) -> dict: ...


_LOG_LEVELS = {
    MessageType.INFO: ("info", ""),
    MessageType.SUCCESS: ("info", "✓ "),
    MessageType.WARNING: ("warning", ""),
    MessageType.ERROR: ("error", ""),
}


@dataclass
class CommandResult:
    """Outcome of one command: status, a closing message and the report."""

    success: bool
    message: str | None = None
    message_type: MessageType = MessageType.INFO
    data: Reportable | None = None
    error_code: ExitCode = ExitCode.FAILURE

    @property
    def exit_code(self) -> int:
        return int(ExitCode.SUCCESS) if self.success else int(self.error_code)

    def log(self) -> None:
        """Log the closing message, if any, at the level of its type."""
        if not self.message:
            return
        level, prefix = _LOG_LEVELS[self.message_type]
        getattr(LOGGER, level)(f"{prefix}{self.message}")


def success(
    message: str | None = None, data: Reportable | None = None
) -> CommandResult:
    return CommandResult(
        success=True,
        message=message,
        message_type=MessageType.SUCCESS if message else MessageType.INFO,
        data=data,
    )


def error(
    message: str,
    data: Reportable | None = None,
    exit_code: ExitCode = ExitCode.FAILURE,
) -> CommandResult:
    return CommandResult(
        success=False,
        message=message,
        message_type=MessageType.ERROR,
        data=data,
        error_code=exit_code,
    )


def warning(message: str, data: Reportable | None = None) -> CommandResult:
    """A run that finished but whose numbers deserve a second look."""
    return CommandResult(
        success=True, message=message, message_type=MessageType.WARNING, data=data
    )


def from_error(e: Error) -> CommandResult:
    """Failed result carrying the exit code of a raised pimtc error."""
    return error(str(e), exit_code=e.exit_code)
