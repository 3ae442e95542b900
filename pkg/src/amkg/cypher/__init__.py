"""Read-only Cypher-subset engine: lexer, parser, validator, executor."""

from .ast import QueryAst, render_ast
from .errors import (
    CypherError,
    ExecutionError,
    LexError,
    ParseError,
    SchemaViolation,
    UnboundVariable,
    UnknownLabel,
    UnknownProperty,
    UnknownRelType,
    WriteClauseRejected,
)
from .executor import ResultTable, execute
from .lexer import Token, tokenize
from .parser import parse
from .validator import validate

__all__ = [
    "QueryAst",
    "ResultTable",
    "Token",
    "CypherError",
    "ExecutionError",
    "LexError",
    "ParseError",
    "SchemaViolation",
    "UnboundVariable",
    "UnknownLabel",
    "UnknownProperty",
    "UnknownRelType",
    "WriteClauseRejected",
    "execute",
    "parse",
    "render_ast",
    "tokenize",
    "validate",
]
