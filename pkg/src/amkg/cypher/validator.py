"""Schema validation of parsed queries.

Every label, relationship type, and property name appearing in a query must
exist in the schema descriptor, otherwise the query is rejected listing each
unknown symbol. This is the firewall that keeps generated queries from
referencing entities the graph does not model (the rejection path for
out-of-scope topics like mechanical properties).
"""

from __future__ import annotations

from typing import Mapping, Protocol

from . import ast
from .errors import UnknownLabel, UnknownProperty, UnknownRelType


class SchemaLike(Protocol):
    """What the validator needs from a schema descriptor."""

    @property
    def labels(self) -> Mapping[str, Mapping[str, str | None]]:
        """label -> property name -> unit (or None)."""

    @property
    def relationships(self) -> Mapping[str, tuple[str, str]]:
        """relationship type -> (from label, to label)."""


def _value_exprs(query: ast.QueryAst):
    for item in query.returns:
        yield item.expr
    for order in query.order_by:
        yield order.expr
    stack = [query.where] if query.where is not None else []
    while stack:
        node = stack.pop()
        if isinstance(node, ast.Comparison):
            yield node.left
            yield node.right
        elif isinstance(node, ast.Membership):
            yield node.left
        elif isinstance(node, ast.Contains):
            yield node.left
            yield node.right
        elif isinstance(node, (ast.And, ast.Or)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, ast.Not):
            stack.append(node.operand)


def _property_accesses(query: ast.QueryAst):
    stack = list(_value_exprs(query))
    while stack:
        expr = stack.pop()
        if isinstance(expr, ast.PropertyAccess):
            yield expr
        elif isinstance(expr, (ast.Count, ast.Collect)) and expr.argument is not None:
            stack.append(expr.argument)


def validate(query: ast.QueryAst, schema: SchemaLike) -> ast.QueryAst:
    """Check every symbol in the query against the schema; return the query.

    Raises UnknownLabel, UnknownRelType, or UnknownProperty, each listing all
    offending symbols of its kind. Labels are checked first, then relationship
    types, then properties.
    """
    unknown_labels: list[str] = []
    unknown_rels: list[str] = []
    unknown_props: list[str] = []

    # variable -> set of labels it is declared with (may be empty)
    var_labels: dict[str, set[str]] = {}
    global_props: set[str] = set()
    for props in schema.labels.values():
        global_props.update(props)

    for pattern in query.patterns:
        for node in pattern.nodes:
            if node.label is not None and node.label not in schema.labels:
                unknown_labels.append(node.label)
            if node.variable:
                var_labels.setdefault(node.variable, set())
                if node.label is not None:
                    var_labels[node.variable].add(node.label)
            for key, _ in node.properties:
                if node.label is not None and node.label in schema.labels:
                    if key not in schema.labels[node.label]:
                        unknown_props.append(key)
                elif key not in global_props:
                    unknown_props.append(key)
        for rel in pattern.rels:
            if rel.rel_type is not None and rel.rel_type not in schema.relationships:
                unknown_rels.append(rel.rel_type)

    for access in _property_accesses(query):
        labels = var_labels.get(access.variable, set())
        known = labels & set(schema.labels)
        if known:
            if not any(access.prop in schema.labels[lbl] for lbl in known):
                unknown_props.append(access.prop)
        elif access.prop not in global_props:
            unknown_props.append(access.prop)

    if unknown_labels:
        raise UnknownLabel(unknown_labels)
    if unknown_rels:
        raise UnknownRelType(unknown_rels)
    if unknown_props:
        raise UnknownProperty(unknown_props)
    return query
