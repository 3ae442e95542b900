"""Query AST node types and the canonical renderer.

The AST is the target of both the parser and the rule translator. Rendering
is deterministic and single-line; `parse(render_ast(a))` is structurally
equal to `a`, which golden tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

LiteralValue = str | int | float | bool

OUT = "out"
IN = "in"
UNDIRECTED = "undirected"


# --- value expressions (usable in RETURN, WHERE operands, ORDER BY) ---------

@dataclass(frozen=True)
class PropertyAccess:
    variable: str
    prop: str


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Literal:
    value: LiteralValue


@dataclass(frozen=True)
class Count:
    """count(*) when argument is None, else count(expr)."""

    argument: "ValueExpr | None"


@dataclass(frozen=True)
class Collect:
    argument: "ValueExpr"


ValueExpr = PropertyAccess | Variable | Literal | Count | Collect


# --- boolean expressions -----------------------------------------------------

@dataclass(frozen=True)
class Comparison:
    left: ValueExpr
    op: str  # one of = <> < <= > >=
    right: ValueExpr


@dataclass(frozen=True)
class Membership:
    left: ValueExpr
    items: tuple[Literal, ...]


@dataclass(frozen=True)
class Contains:
    left: ValueExpr
    right: ValueExpr


@dataclass(frozen=True)
class And:
    left: "BoolExpr"
    right: "BoolExpr"


@dataclass(frozen=True)
class Or:
    left: "BoolExpr"
    right: "BoolExpr"


@dataclass(frozen=True)
class Not:
    operand: "BoolExpr"


BoolExpr = Comparison | Membership | Contains | And | Or | Not


# --- patterns ----------------------------------------------------------------

@dataclass(frozen=True)
class NodePattern:
    variable: str | None = None
    label: str | None = None
    # inline property map entries act as equality predicates
    properties: tuple[tuple[str, LiteralValue], ...] = ()


@dataclass(frozen=True)
class RelPattern:
    variable: str | None = None
    rel_type: str | None = None
    direction: str = OUT


@dataclass(frozen=True)
class Pattern:
    """A path: n+1 node patterns joined by n relationship patterns."""

    nodes: tuple[NodePattern, ...]
    rels: tuple[RelPattern, ...] = ()

    def __post_init__(self) -> None:
        if len(self.nodes) != len(self.rels) + 1:
            raise ValueError("pattern must alternate node, rel, node, ...")


@dataclass(frozen=True)
class ReturnItem:
    expr: ValueExpr
    alias: str | None = None


@dataclass(frozen=True)
class OrderItem:
    expr: ValueExpr
    ascending: bool = True


@dataclass(frozen=True)
class QueryAst:
    patterns: tuple[Pattern, ...]
    returns: tuple[ReturnItem, ...]
    where: BoolExpr | None = None
    distinct: bool = False
    order_by: tuple[OrderItem, ...] = ()
    limit: int | None = None

    def bound_variables(self) -> set[str]:
        names: set[str] = set()
        for pattern in self.patterns:
            for node in pattern.nodes:
                if node.variable:
                    names.add(node.variable)
            for rel in pattern.rels:
                if rel.variable:
                    names.add(rel.variable)
        return names


# --- canonical rendering -----------------------------------------------------

def render_literal(value: LiteralValue) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        escaped = (
            value.replace("\\", "\\\\")
            .replace("'", "\\'")
            .replace("\n", "\\n")
            .replace("\t", "\\t")
        )
        return f"'{escaped}'"
    if isinstance(value, float):
        text = repr(value)
        # exponent notation is outside the grammar; spell the digits out
        if "e" in text or "E" in text:
            text = format(value, ".17f").rstrip("0")
            if text.endswith("."):
                text += "0"
        return text
    return repr(value)


def render_value_expr(expr: ValueExpr) -> str:
    if isinstance(expr, PropertyAccess):
        return f"{expr.variable}.{expr.prop}"
    if isinstance(expr, Variable):
        return expr.name
    if isinstance(expr, Literal):
        return render_literal(expr.value)
    if isinstance(expr, Count):
        inner = "*" if expr.argument is None else render_value_expr(expr.argument)
        return f"count({inner})"
    if isinstance(expr, Collect):
        return f"collect({render_value_expr(expr.argument)})"
    raise TypeError(f"not a value expression: {expr!r}")


_PREC = {Or: 1, And: 2, Not: 3}


def _render_bool(expr: BoolExpr) -> str:
    if isinstance(expr, Comparison):
        return (
            f"{render_value_expr(expr.left)} {expr.op} {render_value_expr(expr.right)}"
        )
    if isinstance(expr, Membership):
        items = ", ".join(render_literal(item.value) for item in expr.items)
        return f"{render_value_expr(expr.left)} IN [{items}]"
    if isinstance(expr, Contains):
        return f"{render_value_expr(expr.left)} CONTAINS {render_value_expr(expr.right)}"
    if isinstance(expr, Not):
        return "NOT " + _render_operand(expr.operand, _PREC[Not])
    if isinstance(expr, (And, Or)):
        word = "AND" if isinstance(expr, And) else "OR"
        prec = _PREC[type(expr)]
        # left-associative: parenthesize the left child only below own
        # precedence, the right child at-or-below so reparsing rebuilds the
        # identical tree shape
        left = _render_operand(expr.left, prec, strict=False)
        right = _render_operand(expr.right, prec, strict=True)
        return f"{left} {word} {right}"
    raise TypeError(f"not a boolean expression: {expr!r}")


def _render_operand(expr: BoolExpr, parent_prec: int, strict: bool = False) -> str:
    text = _render_bool(expr)
    prec = _PREC.get(type(expr), 4)
    if prec < parent_prec or (strict and prec == parent_prec):
        return f"({text})"
    return text


def _render_node(node: NodePattern) -> str:
    parts = node.variable or ""
    if node.label:
        parts += f":{node.label}"
    if node.properties:
        body = ", ".join(f"{k}: {render_literal(v)}" for k, v in node.properties)
        parts += ("" if not parts else " ") + "{" + body + "}"
    return f"({parts})"


def _render_rel(rel: RelPattern) -> str:
    body = rel.variable or ""
    if rel.rel_type:
        body += f":{rel.rel_type}"
    if rel.direction == OUT:
        return f"-[{body}]->"
    if rel.direction == IN:
        return f"<-[{body}]-"
    return f"-[{body}]-"


def render_pattern(pattern: Pattern) -> str:
    out = _render_node(pattern.nodes[0])
    for rel, node in zip(pattern.rels, pattern.nodes[1:]):
        out += _render_rel(rel) + _render_node(node)
    return out


def render_ast(ast: QueryAst) -> str:
    """Deterministic one-line rendering; reparses to an equal AST."""
    parts = ["MATCH " + ", ".join(render_pattern(p) for p in ast.patterns)]
    if ast.where is not None:
        parts.append("WHERE " + _render_bool(ast.where))
    items = []
    for item in ast.returns:
        text = render_value_expr(item.expr)
        if item.alias:
            text += f" AS {item.alias}"
        items.append(text)
    parts.append(("RETURN DISTINCT " if ast.distinct else "RETURN ") + ", ".join(items))
    if ast.order_by:
        keys = [
            render_value_expr(o.expr) + ("" if o.ascending else " DESC")
            for o in ast.order_by
        ]
        parts.append("ORDER BY " + ", ".join(keys))
    if ast.limit is not None:
        parts.append(f"LIMIT {ast.limit}")
    return " ".join(parts)
