"""Pattern-matching executor over a frozen graph.

Semantics:

- Bindings are found by backtracking search seeded from the most
  label-restricted node position of each pattern.
- Within one pattern path, a graph edge may be used at most once
  (relationship uniqueness). Separate comma patterns and separate MATCH
  clauses are independent paths that join on shared variables (cartesian
  product when disjoint).
- Inline property maps are equality predicates.
- A missing property or a cross-type comparison makes the predicate false;
  there is no three-valued logic.
- Aggregation (count/collect) groups rows by the non-aggregate return items.
- DISTINCT de-duplicates whole rows; ORDER BY sorts numbers numerically,
  strings lexicographically, nulls last; LIMIT truncates after ordering.
- Rows with equal sort keys (or no ORDER BY at all) are emitted in ascending
  internal node-id order of their leftmost named binding, which makes output
  deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator

from ..graph import BOTH, Edge, FrozenGraph, INCOMING, Node, OUTGOING
from . import ast
from .errors import ExecutionError

CellValue = Any  # PropertyValue | list | int | None


@dataclass(frozen=True)
class ResultTable:
    columns: tuple[str, ...]
    rows: list[tuple[CellValue, ...]]


_Bound = Node | Edge


def _node_matches(node: Node, pattern: ast.NodePattern) -> bool:
    if pattern.label is not None and pattern.label not in node.labels:
        return False
    for key, expected in pattern.properties:
        actual = node.properties.get(key)
        if actual is None or not _values_equal(actual, expected):
            return False
    return True


def _type_rank(value: CellValue) -> int:
    # bools count as numbers for comparison purposes
    if isinstance(value, bool) or isinstance(value, (int, float)):
        return 0
    if isinstance(value, str):
        return 1
    if isinstance(value, list):
        return 2
    return 3


def _values_equal(a: CellValue, b: CellValue) -> bool:
    if a is None or b is None:
        return False
    if _type_rank(a) != _type_rank(b):
        return False
    if isinstance(a, bool) != isinstance(b, bool):
        return False
    return a == b


def _compare(a: CellValue, op: str, b: CellValue) -> bool:
    """Null-rejecting comparison; cross-type comparisons are false."""
    if a is None or b is None:
        return False
    if op == "=":
        return _values_equal(a, b)
    if op == "<>":
        if _type_rank(a) != _type_rank(b) or isinstance(a, bool) != isinstance(b, bool):
            return False
        return a != b
    # ordering: numbers and strings only, same class
    if isinstance(a, bool) or isinstance(b, bool):
        return False
    numeric = isinstance(a, (int, float)) and isinstance(b, (int, float))
    textual = isinstance(a, str) and isinstance(b, str)
    if not (numeric or textual):
        return False
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    raise ExecutionError(f"unknown comparison operator {op!r}")


class _Matcher:
    """Enumerates variable bindings for all patterns, deterministically."""

    def __init__(self, graph: FrozenGraph, patterns: tuple[ast.Pattern, ...]) -> None:
        self.graph = graph
        self.patterns = patterns

    def bindings(self) -> Iterator[dict[str, _Bound]]:
        yield from self._match_patterns(0, {})

    def _match_patterns(
        self, index: int, env: dict[str, _Bound]
    ) -> Iterator[dict[str, _Bound]]:
        if index == len(self.patterns):
            yield dict(env)
            return
        for extended in self._match_path(self.patterns[index], env):
            yield from self._match_patterns(index + 1, extended)

    # --- single-path matching ------------------------------------------------

    def _seed_index(self, pattern: ast.Pattern, env: dict[str, _Bound]) -> int:
        best = 0
        best_count = None
        for i, node_pat in enumerate(pattern.nodes):
            if node_pat.variable and node_pat.variable in env:
                count = 1
            elif node_pat.label is not None:
                count = len(self.graph.nodes_with_label(node_pat.label))
            else:
                count = self.graph.node_count
            if best_count is None or count < best_count:
                best, best_count = i, count
        return best

    def _seed_candidates(
        self, node_pat: ast.NodePattern, env: dict[str, _Bound]
    ) -> list[Node]:
        if node_pat.variable and node_pat.variable in env:
            bound = env[node_pat.variable]
            if not isinstance(bound, Node):
                return []
            return [bound] if _node_matches(bound, node_pat) else []
        if node_pat.label is not None:
            ids = sorted(self.graph.nodes_with_label(node_pat.label))
        else:
            ids = [n.id for n in self.graph.nodes()]
        return [n for n in map(self.graph.node, ids) if _node_matches(n, node_pat)]

    def _match_path(
        self, pattern: ast.Pattern, env: dict[str, _Bound]
    ) -> Iterator[dict[str, _Bound]]:
        seed = self._seed_index(pattern, env)
        # walk outward from the seed: right to the end, then left to the start
        steps = [(pos, True) for pos in range(seed + 1, len(pattern.nodes))]
        steps += [(pos, False) for pos in range(seed - 1, -1, -1)]

        assigned: dict[int, Node] = {}

        def bind_node(pos: int, node: Node, env: dict[str, _Bound]) -> dict[str, _Bound] | None:
            var = pattern.nodes[pos].variable
            if var:
                if var in env:
                    if not (isinstance(env[var], Node) and env[var].id == node.id):
                        return None
                    return env
                new_env = dict(env)
                new_env[var] = node
                return new_env
            return env

        def bind_edge(rel: ast.RelPattern, edge: Edge, env: dict[str, _Bound]) -> dict[str, _Bound] | None:
            if rel.variable:
                if rel.variable in env:
                    if not (isinstance(env[rel.variable], Edge) and env[rel.variable].id == edge.id):
                        return None
                    return env
                new_env = dict(env)
                new_env[rel.variable] = edge
                return new_env
            return env

        def extend(step: int, env: dict[str, _Bound], used: frozenset[int]) -> Iterator[dict[str, _Bound]]:
            if step == len(steps):
                yield env
                return
            pos, from_left = steps[step]
            if from_left:
                anchor_pos, rel = pos - 1, pattern.rels[pos - 1]
            else:
                anchor_pos, rel = pos + 1, pattern.rels[pos]
            anchor = assigned[anchor_pos]
            for edge, other_id in self._adjacent(anchor, rel, rel_points_right=from_left):
                if edge.id in used:
                    continue
                other = self.graph.node(other_id)
                if not _node_matches(other, pattern.nodes[pos]):
                    continue
                env2 = bind_node(pos, other, env)
                if env2 is None:
                    continue
                env3 = bind_edge(rel, edge, env2)
                if env3 is None:
                    continue
                assigned[pos] = other
                yield from extend(step + 1, env3, used | {edge.id})
                del assigned[pos]

        for seed_node in self._seed_candidates(pattern.nodes[seed], env):
            env2 = bind_node(seed, seed_node, env)
            if env2 is None:
                continue
            assigned[seed] = seed_node
            yield from extend(0, env2, frozenset())
            del assigned[seed]

    def _adjacent(
        self, anchor: Node, rel: ast.RelPattern, rel_points_right: bool
    ) -> Iterator[tuple[Edge, int]]:
        """(edge, other-node-id) pairs for edges of `anchor` matching `rel`.

        `rel_points_right` is true when the anchor is the left node of the
        relationship pattern (we are expanding rightward).
        """
        if rel.direction == ast.UNDIRECTED:
            direction = BOTH
        elif rel.direction == ast.OUT:
            direction = OUTGOING if rel_points_right else INCOMING
        else:  # ast.IN
            direction = INCOMING if rel_points_right else OUTGOING
        for edge in self.graph.edges_from(anchor.id, rel.rel_type, direction):
            other = edge.to_id if edge.from_id == anchor.id else edge.from_id
            yield edge, other


# --- projection / aggregation -------------------------------------------------


def _evaluate(expr: ast.ValueExpr, env: dict[str, _Bound]) -> CellValue:
    if isinstance(expr, ast.Literal):
        return expr.value
    if isinstance(expr, ast.PropertyAccess):
        bound = env.get(expr.variable)
        if bound is None:
            return None
        return bound.properties.get(expr.prop)
    if isinstance(expr, ast.Variable):
        bound = env.get(expr.name)
        if bound is None:
            return None
        # a bare node variable projects its name; a bare edge its type
        if isinstance(bound, Node):
            return bound.properties.get("name")
        return bound.rel_type
    raise ExecutionError(f"cannot evaluate {type(expr).__name__} per binding")


def _check_aggregate_argument(expr: ast.Count | ast.Collect) -> None:
    if expr.argument is not None and isinstance(expr.argument, (ast.Count, ast.Collect)):
        raise ExecutionError("aggregates cannot be nested")


def _column_name(item: ast.ReturnItem) -> str:
    return item.alias if item.alias else ast.render_value_expr(item.expr)


def _evaluate_where(expr: ast.BoolExpr, env: dict[str, _Bound]) -> bool:
    if isinstance(expr, ast.Comparison):
        return _compare(_evaluate(expr.left, env), expr.op, _evaluate(expr.right, env))
    if isinstance(expr, ast.Membership):
        left = _evaluate(expr.left, env)
        return any(_values_equal(left, item.value) for item in expr.items)
    if isinstance(expr, ast.Contains):
        hay = _evaluate(expr.left, env)
        needle = _evaluate(expr.right, env)
        if isinstance(hay, str) and isinstance(needle, str):
            return needle in hay
        return False
    if isinstance(expr, ast.And):
        return _evaluate_where(expr.left, env) and _evaluate_where(expr.right, env)
    if isinstance(expr, ast.Or):
        return _evaluate_where(expr.left, env) or _evaluate_where(expr.right, env)
    if isinstance(expr, ast.Not):
        return not _evaluate_where(expr.operand, env)
    raise ExecutionError(f"cannot evaluate {type(expr).__name__}")


def _named_node_variables(query: ast.QueryAst) -> list[str]:
    ordered: list[str] = []
    for pattern in query.patterns:
        for node in pattern.nodes:
            if node.variable and node.variable not in ordered:
                ordered.append(node.variable)
    return ordered


def _tiebreak(env: dict[str, _Bound], node_vars: list[str]) -> tuple[int, ...]:
    key: list[int] = []
    for var in node_vars:
        bound = env.get(var)
        if isinstance(bound, Node):
            key.append(bound.id)
    return tuple(key)


def _hashable(cell: CellValue) -> CellValue:
    if isinstance(cell, list):
        return tuple(_hashable(item) for item in cell)
    return cell


@dataclass
class _Row:
    cells: tuple[CellValue, ...]
    tiebreak: tuple[int, ...]
    env: dict[str, _Bound] | None  # None for aggregated rows
    order_keys: list[CellValue] | None = None


def _sort_rows(rows: list[_Row], query: ast.QueryAst) -> list[_Row]:
    # least-significant first: the node-id tiebreak, then ORDER BY keys from
    # last to first; each pass is stable and keeps nulls last
    rows = sorted(rows, key=lambda r: r.tiebreak)
    for key_index in range(len(query.order_by) - 1, -1, -1):
        ascending = query.order_by[key_index].ascending
        non_null = [r for r in rows if r.order_keys[key_index] is not None]
        nulls = [r for r in rows if r.order_keys[key_index] is None]

        def sort_key(row: _Row, _k: int = key_index) -> tuple:
            value = row.order_keys[_k]
            if isinstance(value, bool):
                return (0, float(value))
            if isinstance(value, (int, float)):
                return (0, value)
            if isinstance(value, str):
                return (1, value)
            # lists (collect output) order by their text form: deterministic
            # and safe for mixed element types
            if isinstance(value, list):
                return (2, repr(value))
            return (3, repr(value))

        non_null.sort(key=sort_key, reverse=not ascending)
        rows = non_null + nulls
    return rows


def _project_aggregated(
    query: ast.QueryAst,
    bindings: list[dict[str, _Bound]],
    node_vars: list[str],
) -> list[_Row]:
    for item in query.returns:
        if isinstance(item.expr, (ast.Count, ast.Collect)):
            _check_aggregate_argument(item.expr)
    group_positions = [
        i
        for i, item in enumerate(query.returns)
        if not isinstance(item.expr, (ast.Count, ast.Collect))
    ]
    groups: dict[tuple, list[dict[str, _Bound]]] = {}
    tiebreaks: dict[tuple, tuple[int, ...]] = {}
    raw_keys: dict[tuple, tuple[CellValue, ...]] = {}
    for env in bindings:
        values = tuple(_evaluate(query.returns[i].expr, env) for i in group_positions)
        key = tuple(_hashable(v) for v in values)
        if key not in groups:
            groups[key] = []
            tiebreaks[key] = _tiebreak(env, node_vars)
            raw_keys[key] = values
        groups[key].append(env)
    if not groups and not group_positions:
        # all-aggregate projection over zero bindings still yields one row
        groups[()] = []
        tiebreaks[()] = ()
        raw_keys[()] = ()
    rows: list[_Row] = []
    for key, members in groups.items():
        cells: list[CellValue] = []
        position = 0
        for item in query.returns:
            expr = item.expr
            if isinstance(expr, ast.Count):
                if expr.argument is None:
                    cells.append(len(members))
                else:
                    cells.append(
                        sum(
                            1
                            for env in members
                            if _evaluate(expr.argument, env) is not None
                        )
                    )
            elif isinstance(expr, ast.Collect):
                cells.append(
                    [
                        value
                        for env in members
                        if (value := _evaluate(expr.argument, env)) is not None
                    ]
                )
            else:
                cells.append(raw_keys[key][position])
                position += 1
        rows.append(_Row(tuple(cells), tiebreaks[key], env=None))
    return rows


def execute(graph: FrozenGraph, query: ast.QueryAst) -> ResultTable:
    """Run a validated query against a frozen graph."""
    columns = tuple(_column_name(item) for item in query.returns)
    node_vars = _named_node_variables(query)

    bindings = [
        env
        for env in _Matcher(graph, query.patterns).bindings()
        if query.where is None or _evaluate_where(query.where, env)
    ]

    has_aggregate = any(
        isinstance(item.expr, (ast.Count, ast.Collect)) for item in query.returns
    )
    if has_aggregate:
        rows = _project_aggregated(query, bindings, node_vars)
    else:
        rows = [
            _Row(
                tuple(_evaluate(item.expr, env) for item in query.returns),
                _tiebreak(env, node_vars),
                env,
            )
            for env in bindings
        ]

    if query.distinct:
        seen: set[tuple] = set()
        deduped = []
        for row in rows:
            key = tuple(_hashable(c) for c in row.cells)
            if key not in seen:
                seen.add(key)
                deduped.append(row)
        rows = deduped

    # ORDER BY keys: a returned expression's column when one matches,
    # otherwise evaluated against the row's binding (pre-aggregation only)
    if query.order_by:
        return_exprs = [item.expr for item in query.returns]
        aliases = {item.alias: i for i, item in enumerate(query.returns) if item.alias}
        for row in rows:
            row.order_keys = []
            for order in query.order_by:
                if order.expr in return_exprs:
                    row.order_keys.append(row.cells[return_exprs.index(order.expr)])
                elif isinstance(order.expr, ast.Variable) and order.expr.name in aliases:
                    row.order_keys.append(row.cells[aliases[order.expr.name]])
                elif row.env is None:
                    raise ExecutionError(
                        "ORDER BY must reference a returned expression when aggregating"
                    )
                else:
                    row.order_keys.append(_evaluate(order.expr, row.env))

    rows = _sort_rows(rows, query)
    if query.limit is not None:
        rows = rows[: query.limit]
    return ResultTable(columns=columns, rows=[row.cells for row in rows])
