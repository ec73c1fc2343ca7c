"""Exception hierarchy for fnasim."""

from typing import Optional


class FnasimError(Exception):
    """Base class for every error raised by fnasim."""


class InvalidArgumentError(FnasimError, ValueError):
    """An argument is outside the domain of the operation."""


class SizeLimitError(InvalidArgumentError):
    """An exact solver was asked to enumerate too many candidates."""


class ContractViolationError(FnasimError, RuntimeError):
    """A caller broke an operation's precondition."""


class TraceFormatError(FnasimError):
    """A trace file cannot be read.

    ``line`` is 0 when the file itself cannot be opened.
    """

    def __init__(self, path: str, line: int, reason: str):
        self.path = path
        self.line = line
        self.reason = reason
        super().__init__(f"{path}:{line}: {reason}")


class ConfigError(FnasimError):
    """A configuration value is unknown, mistyped or out of range."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class SimulationError(FnasimError):
    """A run inside a sweep failed; carries the sweep point it belonged to."""

    def __init__(
        self,
        reason: str,
        axis: Optional[str] = None,
        value: Optional[object] = None,
        policy: Optional[str] = None,
    ):
        self.axis = axis
        self.value = value
        self.policy = policy
        context = f"[axis={axis} value={value} policy={policy}] " if axis or policy else ""
        super().__init__(f"{context}{reason}")
