from __future__ import annotations

from typing import Optional


class EngineError(Exception):
    """Base class for every error raised by the engine."""


class FieldError(EngineError, ValueError):
    pass


class PosetError(EngineError, ValueError):
    pass


class StyleError(EngineError, ValueError):
    pass


class LabelParseError(EngineError, ValueError):
    """Malformed label or matrix text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 1, column: int = 1, text: Optional[str] = None) -> None:
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"{message} (line {line}, column {column})")


class BudgetExceeded(EngineError, RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "space") -> None:
        self.required = required
        self.budget = budget
        super().__init__(
            f"refusing to enumerate {what} of size {required}: budget is {budget} "
            f"(raise ORACLE_BUDGET or --budget to at least {required})"
        )


class CrossCheckMismatch(EngineError, AssertionError):
    def __init__(self, message: str, values: Optional[dict] = None) -> None:
        self.values = values or {}
        super().__init__(message)
