"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""
from __future__ import annotations

from dataclasses import dataclass


class ErshovError(Exception):
    exit_code = 1


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 0 or self.column < 0 or self.length < 0:
            raise ValueError("source spans are nonnegative")

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(ErshovError):
    exit_code = 2

    def __init__(self, message: str, span: SourceSpan | None = None):
        self.message = message
        self.span = span
        where = f"line {span.line}, column {span.column}: " if span else ""
        super().__init__(where + message)


class SystemParseError(ParseError):
    """Several per-line parse errors reported together."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("; ".join(str(e) for e in errors), errors[0].span if errors else None)


class UnknownSymbolError(ErshovError):
    """Unbound variable or constant missing from the interpretation."""

    exit_code = 3

    def __init__(self, symbol: str, message: str | None = None):
        self.symbol = symbol
        super().__init__(message or f"unknown symbol {symbol!r}")


class DomainError(ErshovError):
    exit_code = 3


class ModelFileError(ErshovError):
    exit_code = 3

    def __init__(self, message: str, key: str | None = None):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


class BudgetExceeded(ErshovError):
    exit_code = 5

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"enumeration needs {required} assignments, budget is {budget}")


class UnboundedFamilyError(ErshovError):
    """A constant family has no supremum and no witness was supplied."""

    exit_code = 6

    def __init__(self, label: str, message: str | None = None):
        self.label = label
        super().__init__(message or f"family {label!r} is upper-unbounded")
