"""The execution guard: no query runs unless it passes all three gates."""

from __future__ import annotations

from ..cypher import parse, validate
from ..cypher.ast import QueryAst
from ..domain.records import SchemaDescriptor


def guard(cypher_text: str, schema: SchemaDescriptor) -> QueryAst:
    """Parse (write clauses rejected structurally) and schema-validate.

    Raises LexError, ParseError, WriteClauseRejected, UnboundVariable,
    UnknownLabel, UnknownRelType, or UnknownProperty. Every query string the
    executor sees has passed through here.
    """
    return validate(parse(cypher_text), schema)
