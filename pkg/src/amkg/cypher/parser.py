"""Recursive-descent parser for the read-only Cypher subset.

Grammar:

    query         := match_clause+ where_clause? return_clause
                     order_clause? limit_clause?
    match_clause  := MATCH pattern ("," pattern)*
    pattern       := node_pat (rel_pat node_pat)*
    node_pat      := "(" ident? (":" ident)? prop_map? ")"
    rel_pat       := "-[" ident? (":" ident)? "]->"
                   | "<-[" ident? (":" ident)? "]-"
                   | "-[" ident? (":" ident)? "]-"
    prop_map      := "{" ident ":" literal ("," ident ":" literal)* "}"
    where_clause  := WHERE bool_expr      (NOT > AND > OR, parentheses allowed)
    return_clause := RETURN DISTINCT? ret_item ("," ret_item)*
    ret_item      := expr (AS ident)?
    expr          := ident "." ident | ident
                   | COUNT "(" (expr | "*") ")" | COLLECT "(" expr ")"
    order_clause  := ORDER BY expr (ASC|DESC)? ("," ...)*
    limit_clause  := LIMIT integer

Write clauses (CREATE, MERGE, SET, DELETE, REMOVE, DROP) are reserved words;
their presence anywhere in the token stream raises WriteClauseRejected before
any parsing happens, so no write can ever reach the executor.
"""

from __future__ import annotations

from . import ast
from .errors import ParseError, UnboundVariable, WriteClauseRejected
from .lexer import (
    EOF,
    IDENT,
    KEYWORD,
    NUMBER,
    OP,
    PUNCT,
    STRING,
    WRITE_KEYWORDS,
    Token,
    line_column,
    tokenize,
)

_COMPARISON_OPS = ("=", "<>", "<", "<=", ">", ">=")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    # --- token helpers -----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def at(self, kind: str, text: str | None = None) -> bool:
        token = self.peek()
        return token.kind == kind and (text is None or token.text == text)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.advance()
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        token = self.accept(kind, text)
        if token is None:
            self.fail(f"unexpected {self._describe(self.peek())}", (text or kind,))
        return token

    def fail(self, message: str, expected: tuple[str, ...] = ()) -> None:
        line, column = line_column(self.text, self.peek().offset)
        raise ParseError(message, line, column, expected)

    @staticmethod
    def _describe(token: Token) -> str:
        return "end of input" if token.kind == EOF else f"{token.kind} {token.text!r}"

    # --- grammar -----------------------------------------------------------

    def parse_query(self) -> ast.QueryAst:
        patterns: list[ast.Pattern] = []
        self.expect(KEYWORD, "MATCH")
        patterns.extend(self.parse_pattern_list())
        while self.accept(KEYWORD, "MATCH"):
            patterns.extend(self.parse_pattern_list())

        where = None
        if self.accept(KEYWORD, "WHERE"):
            where = self.parse_or_expr()

        self.expect(KEYWORD, "RETURN")
        distinct = self.accept(KEYWORD, "DISTINCT") is not None
        returns = [self.parse_return_item()]
        while self.accept(PUNCT, ","):
            returns.append(self.parse_return_item())

        order_by: list[ast.OrderItem] = []
        if self.accept(KEYWORD, "ORDER"):
            self.expect(KEYWORD, "BY")
            order_by.append(self.parse_order_item())
            while self.accept(PUNCT, ","):
                order_by.append(self.parse_order_item())

        limit = None
        if self.accept(KEYWORD, "LIMIT"):
            token = self.peek()
            if token.kind != NUMBER or not isinstance(token.value, int):
                self.fail("LIMIT requires a non-negative integer", ("integer",))
            self.advance()
            limit = token.value

        if not self.at(EOF):
            self.fail(f"unexpected {self._describe(self.peek())} after query", ("end of input",))
        return ast.QueryAst(
            patterns=tuple(patterns),
            returns=tuple(returns),
            where=where,
            distinct=distinct,
            order_by=tuple(order_by),
            limit=limit,
        )

    def parse_pattern_list(self) -> list[ast.Pattern]:
        patterns = [self.parse_pattern()]
        while self.accept(PUNCT, ","):
            patterns.append(self.parse_pattern())
        return patterns

    def parse_pattern(self) -> ast.Pattern:
        nodes = [self.parse_node_pattern()]
        rels: list[ast.RelPattern] = []
        while self.at(OP, "-") or self.at(OP, "<-"):
            rels.append(self.parse_rel_pattern())
            nodes.append(self.parse_node_pattern())
        return ast.Pattern(nodes=tuple(nodes), rels=tuple(rels))

    def parse_node_pattern(self) -> ast.NodePattern:
        self.expect(PUNCT, "(")
        variable = None
        label = None
        props: tuple[tuple[str, ast.LiteralValue], ...] = ()
        if self.at(IDENT):
            variable = self.advance().text
        if self.accept(PUNCT, ":"):
            label = self.expect(IDENT).text
        if self.at(PUNCT, "{"):
            props = self.parse_prop_map()
        self.expect(PUNCT, ")")
        return ast.NodePattern(variable=variable, label=label, properties=props)

    def parse_rel_pattern(self) -> ast.RelPattern:
        if self.accept(OP, "<-"):
            variable, rel_type = self.parse_rel_body()
            self.expect(OP, "-")
            return ast.RelPattern(variable=variable, rel_type=rel_type, direction=ast.IN)
        self.expect(OP, "-")
        variable, rel_type = self.parse_rel_body()
        if self.accept(OP, "->"):
            return ast.RelPattern(variable=variable, rel_type=rel_type, direction=ast.OUT)
        if self.accept(OP, "-"):
            return ast.RelPattern(
                variable=variable, rel_type=rel_type, direction=ast.UNDIRECTED
            )
        self.fail("relationship must end with '->' or '-'", ("->", "-"))
        raise AssertionError("unreachable")

    def parse_rel_body(self) -> tuple[str | None, str | None]:
        self.expect(PUNCT, "[")
        variable = None
        rel_type = None
        if self.at(IDENT):
            variable = self.advance().text
        if self.accept(PUNCT, ":"):
            rel_type = self.expect(IDENT).text
        self.expect(PUNCT, "]")
        return variable, rel_type

    def parse_prop_map(self) -> tuple[tuple[str, ast.LiteralValue], ...]:
        self.expect(PUNCT, "{")
        entries: list[tuple[str, ast.LiteralValue]] = []
        while True:
            key = self.expect(IDENT).text
            self.expect(PUNCT, ":")
            entries.append((key, self.parse_literal()))
            if not self.accept(PUNCT, ","):
                break
        self.expect(PUNCT, "}")
        return tuple(entries)

    def parse_literal(self) -> ast.LiteralValue:
        if self.accept(KEYWORD, "TRUE"):
            return True
        if self.accept(KEYWORD, "FALSE"):
            return False
        negative = self.accept(OP, "-") is not None
        token = self.peek()
        if token.kind == NUMBER:
            self.advance()
            return -token.value if negative else token.value
        if negative:
            self.fail("expected number after '-'", ("number",))
        if token.kind == STRING:
            self.advance()
            return token.value
        self.fail(f"expected literal, got {self._describe(token)}", ("literal",))
        raise AssertionError("unreachable")

    # --- boolean expressions (NOT > AND > OR) --------------------------------

    def parse_or_expr(self) -> ast.BoolExpr:
        expr = self.parse_and_expr()
        while self.accept(KEYWORD, "OR"):
            expr = ast.Or(expr, self.parse_and_expr())
        return expr

    def parse_and_expr(self) -> ast.BoolExpr:
        expr = self.parse_not_expr()
        while self.accept(KEYWORD, "AND"):
            expr = ast.And(expr, self.parse_not_expr())
        return expr

    def parse_not_expr(self) -> ast.BoolExpr:
        if self.accept(KEYWORD, "NOT"):
            return ast.Not(self.parse_not_expr())
        return self.parse_bool_primary()

    def parse_bool_primary(self) -> ast.BoolExpr:
        if self.accept(PUNCT, "("):
            inner = self.parse_or_expr()
            self.expect(PUNCT, ")")
            return inner
        left = self.parse_operand()
        if self.peek().kind == OP and self.peek().text in _COMPARISON_OPS:
            op = self.advance().text
            return ast.Comparison(left, op, self.parse_operand())
        if self.accept(KEYWORD, "IN"):
            self.expect(PUNCT, "[")
            items = [ast.Literal(self.parse_literal())]
            while self.accept(PUNCT, ","):
                items.append(ast.Literal(self.parse_literal()))
            self.expect(PUNCT, "]")
            return ast.Membership(left, tuple(items))
        if self.accept(KEYWORD, "CONTAINS"):
            return ast.Contains(left, self.parse_operand())
        self.fail(
            f"expected comparison, IN, or CONTAINS, got {self._describe(self.peek())}",
            _COMPARISON_OPS + ("IN", "CONTAINS"),
        )
        raise AssertionError("unreachable")

    def parse_operand(self) -> ast.ValueExpr:
        """Predicate operand: a bound property access or a literal."""
        if self.at(IDENT):
            name = self.advance().text
            self.expect(PUNCT, ".")
            prop = self.expect(IDENT).text
            return ast.PropertyAccess(name, prop)
        return ast.Literal(self.parse_literal())

    # --- return / order expressions ------------------------------------------

    def parse_return_item(self) -> ast.ReturnItem:
        expr = self.parse_value_expr()
        alias = None
        if self.accept(KEYWORD, "AS"):
            alias = self.expect(IDENT).text
        return ast.ReturnItem(expr=expr, alias=alias)

    def parse_order_item(self) -> ast.OrderItem:
        expr = self.parse_value_expr()
        ascending = True
        if self.accept(KEYWORD, "DESC"):
            ascending = False
        else:
            self.accept(KEYWORD, "ASC")
        return ast.OrderItem(expr=expr, ascending=ascending)

    def parse_value_expr(self) -> ast.ValueExpr:
        if self.accept(KEYWORD, "COUNT"):
            self.expect(PUNCT, "(")
            if self.accept(PUNCT, "*"):
                self.expect(PUNCT, ")")
                return ast.Count(None)
            inner = self.parse_value_expr()
            self.expect(PUNCT, ")")
            return ast.Count(inner)
        if self.accept(KEYWORD, "COLLECT"):
            self.expect(PUNCT, "(")
            inner = self.parse_value_expr()
            self.expect(PUNCT, ")")
            return ast.Collect(inner)
        name = self.expect(IDENT).text
        if self.accept(PUNCT, "."):
            prop = self.expect(IDENT).text
            return ast.PropertyAccess(name, prop)
        return ast.Variable(name)


def _referenced_variables(node: object) -> set[str]:
    refs: set[str] = set()
    if isinstance(node, ast.PropertyAccess):
        refs.add(node.variable)
    elif isinstance(node, ast.Variable):
        refs.add(node.name)
    elif isinstance(node, (ast.Count, ast.Collect)):
        if node.argument is not None:
            refs |= _referenced_variables(node.argument)
    elif isinstance(node, ast.Comparison):
        refs |= _referenced_variables(node.left) | _referenced_variables(node.right)
    elif isinstance(node, ast.Membership):
        refs |= _referenced_variables(node.left)
    elif isinstance(node, ast.Contains):
        refs |= _referenced_variables(node.left) | _referenced_variables(node.right)
    elif isinstance(node, (ast.And, ast.Or)):
        refs |= _referenced_variables(node.left) | _referenced_variables(node.right)
    elif isinstance(node, ast.Not):
        refs |= _referenced_variables(node.operand)
    return refs


def parse(text: str) -> ast.QueryAst:
    """Parse query text into a QueryAst, enforcing all AST invariants.

    Raises LexError, WriteClauseRejected, ParseError, or UnboundVariable.
    """
    for token in tokenize(text):
        if token.kind == KEYWORD and token.text in WRITE_KEYWORDS:
            raise WriteClauseRejected(
                f"write clauses are not supported: {token.text}"
            )
    query = _Parser(text).parse_query()

    bound = query.bound_variables()
    referenced: set[str] = set()
    if query.where is not None:
        referenced |= _referenced_variables(query.where)
    for item in query.returns:
        referenced |= _referenced_variables(item.expr)
    for order in query.order_by:
        referenced |= _referenced_variables(order.expr)
    for variable in sorted(referenced - bound):
        raise UnboundVariable(variable)
    return query
