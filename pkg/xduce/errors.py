"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class XduceError(Exception):
    """Root of every error raised on purpose by xduce."""


class WordSyntaxError(XduceError, ValueError):
    pass


class MachineFormatError(XduceError, ValueError):
    """A machine file that does not parse or validate, located by line and column."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column


class MachineValidationError(XduceError, ValueError):
    pass


class BudgetExceeded(XduceError, RuntimeError):
    """A bounded search or construction ran out of its node/state budget."""

    def __init__(self, what: str, reached: int, budget: int) -> None:
        super().__init__(f"{what} budget exceeded: reached {reached} (budget {budget})")
        self.what = what
        self.reached = reached
        self.budget = budget


class RunTooShort(XduceError, ValueError):
    def __init__(self, wanted: int, available: int) -> None:
        super().__init__(
            f"machine run too short: needed {wanted} steps, it halted after {available}"
        )
        self.wanted = wanted
        self.available = available
