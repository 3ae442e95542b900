"""Shared test machinery: brute-force query oracle, random graphs, fuzz ASTs.

The oracle is deliberately dumb and independent of the engine: it tries
every node-tuple assignment position by position, enumerates candidate
edges by scanning the whole edge list, and filters. It shares no matching,
indexing, or evaluation code with the executor.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter

from amkg.cypher import ast
from amkg.graph import Edge, FrozenGraph, GraphBuilder, Node

# --- independent value/predicate evaluation ----------------------------------


def _o_eval(expr, env):
    if isinstance(expr, ast.Literal):
        return expr.value
    if isinstance(expr, ast.PropertyAccess):
        item = env.get(expr.variable)
        if item is None:
            return None
        return item.properties.get(expr.prop)
    if isinstance(expr, ast.Variable):
        item = env.get(expr.name)
        if item is None:
            return None
        if isinstance(item, Node):
            return item.properties.get("name")
        return item.rel_type
    raise AssertionError(f"oracle cannot evaluate {expr!r}")


def _o_same_kind(a, b) -> bool:
    if isinstance(a, bool) != isinstance(b, bool):
        return False
    if isinstance(a, bool) and isinstance(b, bool):
        return True
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return True
    if isinstance(a, str) and isinstance(b, str):
        return True
    if isinstance(a, list) and isinstance(b, list):
        return True
    return False


def _o_compare(a, op, b) -> bool:
    if a is None or b is None or not _o_same_kind(a, b):
        return False
    if op == "=":
        return a == b
    if op == "<>":
        return a != b
    if isinstance(a, bool) or isinstance(a, list):
        return False
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    raise AssertionError(op)


def _o_bool(expr, env) -> bool:
    if isinstance(expr, ast.Comparison):
        return _o_compare(_o_eval(expr.left, env), expr.op, _o_eval(expr.right, env))
    if isinstance(expr, ast.Membership):
        left = _o_eval(expr.left, env)
        if left is None:
            return False
        return any(_o_same_kind(left, i.value) and left == i.value for i in expr.items)
    if isinstance(expr, ast.Contains):
        hay, needle = _o_eval(expr.left, env), _o_eval(expr.right, env)
        return isinstance(hay, str) and isinstance(needle, str) and needle in hay
    if isinstance(expr, ast.And):
        return _o_bool(expr.left, env) and _o_bool(expr.right, env)
    if isinstance(expr, ast.Or):
        return _o_bool(expr.left, env) or _o_bool(expr.right, env)
    if isinstance(expr, ast.Not):
        return not _o_bool(expr.operand, env)
    raise AssertionError(expr)


# --- brute-force binding enumeration ------------------------------------------


def _node_ok(node: Node, pat: ast.NodePattern) -> bool:
    if pat.label is not None and pat.label not in node.labels:
        return False
    for key, want in pat.properties:
        have = node.properties.get(key)
        if have is None or not _o_same_kind(have, want) or have != want:
            return False
    return True


def _edges_between(edges, left: Node, right: Node, rel: ast.RelPattern):
    found = []
    for edge in edges:
        if rel.rel_type is not None and edge.rel_type != rel.rel_type:
            continue
        forward = edge.from_id == left.id and edge.to_id == right.id
        backward = edge.from_id == right.id and edge.to_id == left.id
        if rel.direction == ast.OUT and forward:
            found.append(edge)
        elif rel.direction == ast.IN and backward:
            found.append(edge)
        elif rel.direction == ast.UNDIRECTED and (forward or backward):
            found.append(edge)
    return found


def oracle_bindings(graph: FrozenGraph, query: ast.QueryAst):
    """Every consistent assignment of nodes and edges to pattern positions."""
    nodes = graph.nodes()
    edges = graph.edges()
    positions = []  # (pattern index, node pattern)
    for p_idx, pattern in enumerate(query.patterns):
        for node_pat in pattern.nodes:
            positions.append((p_idx, node_pat))

    candidate_lists = [
        [n for n in nodes if _node_ok(n, pat)] for _, pat in positions
    ]

    results = []
    for assignment in itertools.product(*candidate_lists):
        env: dict[str, Node | Edge] = {}
        consistent = True
        for (_, pat), node in zip(positions, assignment):
            if pat.variable:
                if pat.variable in env and env[pat.variable].id != node.id:
                    consistent = False
                    break
                env[pat.variable] = node
        if not consistent:
            continue

        # per pattern: candidate edges for each rel slot
        offset = 0
        per_pattern_choices = []
        rel_slots = []  # flattened rel patterns in pattern order
        ok = True
        for pattern in query.patterns:
            k = len(pattern.nodes)
            pat_nodes = assignment[offset : offset + k]
            offset += k
            slots = []
            for i, rel in enumerate(pattern.rels):
                options = _edges_between(edges, pat_nodes[i], pat_nodes[i + 1], rel)
                if not options:
                    ok = False
                    break
                slots.append(options)
                rel_slots.append(rel)
            if not ok:
                break
            per_pattern_choices.append(slots)
        if not ok:
            continue

        flat_choices = [slot for slots in per_pattern_choices for slot in slots]
        for edge_choice in itertools.product(*flat_choices):
            # relationship uniqueness within each pattern path
            idx = 0
            unique = True
            for slots in per_pattern_choices:
                ids = [edge_choice[idx + j].id for j in range(len(slots))]
                idx += len(slots)
                if len(set(ids)) != len(ids):
                    unique = False
                    break
            if not unique:
                continue
            env2 = dict(env)
            conflict = False
            for rel, edge in zip(rel_slots, edge_choice):
                if rel.variable:
                    if rel.variable in env2 and env2[rel.variable].id != edge.id:
                        conflict = True
                        break
                    env2[rel.variable] = edge
            if conflict:
                continue
            if query.where is not None and not _o_bool(query.where, env2):
                continue
            results.append(env2)
    return results


def _cell_key(cell):
    if isinstance(cell, list):
        return tuple(_cell_key(item) for item in cell)
    return cell


def oracle_rows(graph: FrozenGraph, query: ast.QueryAst) -> list[tuple]:
    """Projected rows (after aggregation and DISTINCT, before ordering)."""
    bindings = oracle_bindings(graph, query)
    aggregates = [
        isinstance(item.expr, (ast.Count, ast.Collect)) for item in query.returns
    ]
    if any(aggregates):
        group_idx = [i for i, is_agg in enumerate(aggregates) if not is_agg]
        groups: dict[tuple, list] = {}
        for env in bindings:
            key = tuple(
                _cell_key(_o_eval(query.returns[i].expr, env)) for i in group_idx
            )
            groups.setdefault(key, []).append(env)
        if not groups and not group_idx:
            groups[()] = []
        rows = []
        for key, members in groups.items():
            cells = []
            ki = 0
            for item, is_agg in zip(query.returns, aggregates):
                if not is_agg:
                    value = key[ki]
                    ki += 1
                    cells.append(list(value) if isinstance(value, tuple) else value)
                elif isinstance(item.expr, ast.Count):
                    if item.expr.argument is None:
                        cells.append(len(members))
                    else:
                        cells.append(
                            sum(
                                1
                                for env in members
                                if _o_eval(item.expr.argument, env) is not None
                            )
                        )
                else:
                    cells.append(
                        [
                            v
                            for env in members
                            if (v := _o_eval(item.expr.argument, env)) is not None
                        ]
                    )
            rows.append(tuple(cells))
    else:
        rows = [
            tuple(_o_eval(item.expr, env) for item in query.returns)
            for env in bindings
        ]
    if query.distinct:
        seen = set()
        deduped = []
        for row in rows:
            key = tuple(_cell_key(c) for c in row)
            if key not in seen:
                seen.add(key)
                deduped.append(row)
        rows = deduped
    return rows


def oracle_execute(graph: FrozenGraph, query: ast.QueryAst):
    """(rows, ordered): ordering applied only when the query has ORDER BY,
    whose keys must be returned columns (true for the whole suite)."""
    rows = oracle_rows(graph, query)
    if not query.order_by:
        return rows, False
    column_exprs = [item.expr for item in query.returns]
    key_indexes = []
    for order in query.order_by:
        assert order.expr in column_exprs, "suite orders by returned columns only"
        key_indexes.append(column_exprs.index(order.expr))
    for order, col in reversed(list(zip(query.order_by, key_indexes))):
        non_null = [r for r in rows if r[col] is not None]
        nulls = [r for r in rows if r[col] is None]

        def key(row):
            v = row[col]
            if isinstance(v, bool):
                return (0, float(v))
            if isinstance(v, (int, float)):
                return (0, v)
            if isinstance(v, str):
                return (1, v)
            return (2, repr(v))

        non_null.sort(key=key, reverse=not order.ascending)
        rows = non_null + nulls
    if query.limit is not None:
        rows = rows[: query.limit]
    return rows, True


def normalize_rows(rows) -> list[tuple]:
    """Collect cells (lists) are sorted: their internal order is
    enumeration-dependent and not part of the contract."""
    out = []
    for row in rows:
        out.append(
            tuple(
                tuple(sorted(c, key=repr)) if isinstance(c, list) else c for c in row
            )
        )
    return out


def assert_rows_match(actual, expected, ordered: bool) -> None:
    actual_n = normalize_rows(actual)
    expected_n = normalize_rows(expected)
    if ordered:
        assert actual_n == expected_n
    else:
        assert Counter(actual_n) == Counter(expected_n)


# --- random graphs -------------------------------------------------------------

_LABEL_CHOICES = ("A", "B", "C")
_REL_CHOICES = ("R", "S", "T")
_COLOURS = ("red", "green", "blue", "n1ne")


def random_graph(rng: random.Random, max_nodes: int = 30, max_edges: int = 60) -> FrozenGraph:
    builder = GraphBuilder()
    n = rng.randint(2, max_nodes)
    for i in range(n):
        labels = rng.sample(_LABEL_CHOICES, k=rng.choice((1, 1, 1, 2)))
        props = {"name": f"n{i}"}
        if rng.random() < 0.85:
            props["num"] = rng.choice((-2, 0, 1, 3, 4, 5.5, 7, 9, 10.25))
        if rng.random() < 0.85:
            props["s"] = rng.choice(_COLOURS)
        if rng.random() < 0.6:
            props["flag"] = rng.random() < 0.5
        builder.add_node(labels, props)
    m = rng.randint(0, max_edges)
    for _ in range(m):
        builder.add_edge(
            rng.randrange(n), rng.randrange(n), rng.choice(_REL_CHOICES)
        )
    return builder.freeze()


# the fixed executor-equivalence suite; together these touch every grammar
# production (directions, joins, prop maps, every operator, aggregation,
# DISTINCT, ORDER BY with both directions, LIMIT)
ORACLE_SUITE = (
    "MATCH (a:A) RETURN a.name",
    "MATCH (a) RETURN a",
    "MATCH (a:A)-[:R]->(b) RETURN a.name, b.name",
    "MATCH (a)<-[:S]-(b:B) RETURN a.name, b.name",
    "MATCH (a)-[r]-(b) RETURN a.name, r",
    "MATCH (a {s: 'red'}) RETURN a.name",
    "MATCH (a:A {flag: true, s: 'red'}) RETURN a.name",
    "MATCH (a)-[:R]->(b)-[:R]->(c) RETURN a.name, b.name, c.name",
    "MATCH (a)-[:R]->(a) RETURN count(*)",
    "MATCH (a:A), (b:B) RETURN a.name, b.name",
    "MATCH (a:A) MATCH (b:C) RETURN a.name, b.name",
    "MATCH (a:A)-[:R]->(b), (b)-[:S]->(:C) RETURN a.name, b.name",
    "MATCH (a) WHERE a.num > 5.5 AND a.s = 'red' RETURN a.name",
    "MATCH (a) WHERE a.num <= 3 OR NOT a.s = 'blue' RETURN a.name",
    "MATCH (a) WHERE (a.num >= 2 AND a.num < 9) OR a.flag = true RETURN a.name",
    "MATCH (a) WHERE a.s IN ['red', 'green'] AND a.name CONTAINS '1' RETURN a.name",
    "MATCH (a) WHERE a.num <> 4 RETURN DISTINCT a.s ORDER BY a.s",
    "MATCH (a) RETURN a.s AS colour, count(a.num) AS n",
    "MATCH (a:A)-[:R]->(b) RETURN a.name, collect(b.num)",
    "MATCH (a) WHERE a.num >= -1 RETURN a.name, a.num ORDER BY a.num DESC, a.name LIMIT 7",
)


# --- fuzz query generation ------------------------------------------------------

_FUZZ_LABELS = ("A", "Bb", "C_c")
_FUZZ_RELS = ("R", "S2", "T_T")
_FUZZ_PROPS = ("name", "num", "s", "flag", "k1")
_FUZZ_STRINGS = ("red", "a'b", "x\\y", "", "Ti-6Al-4V", "100 mm", "two\nlines")


def _fuzz_literal(rng: random.Random):
    kind = rng.randrange(5)
    if kind == 0:
        return rng.choice(_FUZZ_STRINGS)
    if kind == 1:
        return rng.randint(-50, 50)
    if kind == 2:
        return rng.choice((0.5, 2.25, -3.5, 1000.0, 0.00001, 1e20))
    if kind == 3:
        return rng.random() < 0.5
    return rng.randint(0, 9)


def _fuzz_operand(rng: random.Random, variables: list[str]) -> ast.ValueExpr:
    if variables and rng.random() < 0.7:
        return ast.PropertyAccess(rng.choice(variables), rng.choice(_FUZZ_PROPS))
    return ast.Literal(_fuzz_literal(rng))


def _fuzz_bool(rng: random.Random, variables: list[str], depth: int) -> ast.BoolExpr:
    if depth <= 0 or rng.random() < 0.4:
        kind = rng.randrange(3)
        if kind == 0:
            op = rng.choice(("=", "<>", "<", "<=", ">", ">="))
            return ast.Comparison(_fuzz_operand(rng, variables), op, _fuzz_operand(rng, variables))
        if kind == 1:
            items = tuple(
                ast.Literal(_fuzz_literal(rng)) for _ in range(rng.randint(1, 3))
            )
            return ast.Membership(_fuzz_operand(rng, variables), items)
        return ast.Contains(
            _fuzz_operand(rng, variables), ast.Literal(rng.choice(_FUZZ_STRINGS))
        )
    kind = rng.randrange(3)
    if kind == 0:
        return ast.And(_fuzz_bool(rng, variables, depth - 1), _fuzz_bool(rng, variables, depth - 1))
    if kind == 1:
        return ast.Or(_fuzz_bool(rng, variables, depth - 1), _fuzz_bool(rng, variables, depth - 1))
    return ast.Not(_fuzz_bool(rng, variables, depth - 1))


def random_query_ast(rng: random.Random) -> ast.QueryAst:
    """A random well-formed query exercising the whole grammar."""
    node_vars: list[str] = []
    rel_vars: list[str] = []

    def new_node_pattern(force_var: bool = False) -> ast.NodePattern:
        var = None
        if force_var or rng.random() < 0.7:
            var = f"v{len(node_vars)}"
            node_vars.append(var)
        label = rng.choice(_FUZZ_LABELS) if rng.random() < 0.6 else None
        props = ()
        if rng.random() < 0.3:
            props = tuple(
                (rng.choice(_FUZZ_PROPS), _fuzz_literal(rng))
                for _ in range(rng.randint(1, 2))
            )
        return ast.NodePattern(variable=var, label=label, properties=props)

    def new_rel_pattern() -> ast.RelPattern:
        var = None
        if rng.random() < 0.3:
            var = f"r{len(rel_vars)}"
            rel_vars.append(var)
        rel_type = rng.choice(_FUZZ_RELS) if rng.random() < 0.7 else None
        direction = rng.choice((ast.OUT, ast.IN, ast.UNDIRECTED))
        return ast.RelPattern(variable=var, rel_type=rel_type, direction=direction)

    patterns = []
    for p in range(rng.randint(1, 2)):
        k = rng.randint(1, 3)
        nodes = [new_node_pattern(force_var=(p == 0 and len(node_vars) == 0))]
        rels = []
        for _ in range(k - 1):
            rels.append(new_rel_pattern())
            nodes.append(new_node_pattern())
        patterns.append(ast.Pattern(nodes=tuple(nodes), rels=tuple(rels)))

    all_vars = node_vars + rel_vars

    def return_expr() -> ast.ValueExpr:
        kind = rng.randrange(6)
        if kind == 0:
            return ast.Variable(rng.choice(all_vars))
        if kind == 1:
            return ast.Count(None)
        if kind == 2:
            return ast.Count(ast.PropertyAccess(rng.choice(all_vars), rng.choice(_FUZZ_PROPS)))
        if kind == 3:
            return ast.Collect(ast.PropertyAccess(rng.choice(all_vars), rng.choice(_FUZZ_PROPS)))
        return ast.PropertyAccess(rng.choice(all_vars), rng.choice(_FUZZ_PROPS))

    returns = []
    for i in range(rng.randint(1, 3)):
        alias = f"out{i}" if rng.random() < 0.3 else None
        returns.append(ast.ReturnItem(expr=return_expr(), alias=alias))

    where = _fuzz_bool(rng, node_vars, depth=2) if rng.random() < 0.6 else None

    order_by = tuple(
        ast.OrderItem(
            expr=ast.PropertyAccess(rng.choice(node_vars), rng.choice(_FUZZ_PROPS)),
            ascending=rng.random() < 0.5,
        )
        for _ in range(rng.randint(0, 2))
    )
    limit = rng.randint(0, 10) if rng.random() < 0.3 else None

    return ast.QueryAst(
        patterns=tuple(patterns),
        returns=tuple(returns),
        where=where,
        distinct=rng.random() < 0.3,
        order_by=order_by,
        limit=limit,
    )
