"""Error classes raised by the query engine."""

from __future__ import annotations


class CypherError(Exception):
    """Base class for all query engine errors."""


class LexError(CypherError):
    """Illegal character or unterminated string literal."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class ParseError(CypherError):
    """Unexpected token; reports 1-based line/column and the expected set."""

    def __init__(
        self, message: str, line: int, column: int, expected: tuple[str, ...] = ()
    ) -> None:
        detail = f"line {line}, column {column}: {message}"
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(detail)
        self.line = line
        self.column = column
        self.expected = expected


class WriteClauseRejected(CypherError):
    """The query used a reserved write keyword (CREATE, MERGE, SET, ...)."""


class UnboundVariable(CypherError):
    """WHERE/RETURN/ORDER BY referenced a variable no pattern binds."""

    def __init__(self, variable: str) -> None:
        super().__init__(f"variable {variable!r} is not bound by any pattern")
        self.variable = variable


class SchemaViolation(CypherError):
    """Base for schema-validation rejections; lists the unknown symbols."""

    def __init__(self, kind: str, symbols: list[str]) -> None:
        super().__init__(f"unknown {kind}: " + ", ".join(sorted(set(symbols))))
        self.symbols = sorted(set(symbols))


class UnknownLabel(SchemaViolation):
    def __init__(self, symbols: list[str]) -> None:
        super().__init__("label", symbols)


class UnknownRelType(SchemaViolation):
    def __init__(self, symbols: list[str]) -> None:
        super().__init__("relationship type", symbols)


class UnknownProperty(SchemaViolation):
    def __init__(self, symbols: list[str]) -> None:
        super().__init__("property", symbols)


class ExecutionError(CypherError):
    """Raised only for aggregate evaluation over an unbound expression."""
