"""In-memory directed labeled property graph.

A mutable :class:`GraphBuilder` accumulates nodes and edges during ingestion;
:meth:`GraphBuilder.freeze` produces an immutable :class:`FrozenGraph` with
label and adjacency indexes that the query engine reads. A frozen graph never
changes and is safe to share across any number of concurrent readers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

# Property values are restricted to five variants: text, float, int, bool,
# and list-of-text. Nested maps and dates are deliberately unsupported.
PropertyValue = str | float | int | bool | list[str]

OUTGOING = "outgoing"
INCOMING = "incoming"
BOTH = "both"

_REL_TYPE_RE = re.compile(r"^[A-Z][A-Z0-9_]*$")


class GraphError(Exception):
    """Base class for graph construction and lookup errors."""


class EmptyLabels(GraphError):
    """A node was added with no labels, or with an empty label string."""


class InvalidProperty(GraphError):
    """A property value falls outside the supported variants (NaN, empty key, ...)."""


class UnknownNode(GraphError):
    """An operation referenced a node id that does not exist."""


class EmptyRelType(GraphError):
    """An edge was added with an empty relationship type."""


class InvalidRelType(GraphError):
    """Relationship types must be uppercase-with-underscores."""


class MissingName(GraphError):
    """Every node must carry a 'name' property by freeze time."""


class DuplicateName(GraphError):
    """Two nodes sharing a label carry the same 'name' property."""


def check_property_value(key: str, value: PropertyValue) -> None:
    """Reject property keys/values outside the supported variants.

    Raises InvalidProperty for empty keys, non-finite numbers, lists with
    non-string or empty elements, and any unsupported Python type.
    """
    if not isinstance(key, str) or not key:
        raise InvalidProperty(f"property key must be a non-empty string, got {key!r}")
    if isinstance(value, bool):  # bool before int: bool is an int subclass
        return
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not math.isfinite(value):
            raise InvalidProperty(f"property {key!r} is not finite: {value!r}")
        return
    if isinstance(value, str):
        return
    if isinstance(value, list):
        for item in value:
            if not isinstance(item, str) or not item:
                raise InvalidProperty(
                    f"property {key!r}: list elements must be non-empty strings"
                )
        return
    raise InvalidProperty(f"property {key!r} has unsupported type {type(value).__name__}")


@dataclass(frozen=True)
class Node:
    """A graph node: sequential integer id, ordered labels, property map."""

    id: int
    labels: tuple[str, ...]
    properties: dict[str, PropertyValue]

    @property
    def name(self) -> str:
        return str(self.properties["name"])


@dataclass(frozen=True)
class Edge:
    """A typed directed edge between two node ids."""

    id: int
    from_id: int
    to_id: int
    rel_type: str
    properties: dict[str, PropertyValue]


class GraphBuilder:
    """Single-owner mutable graph under construction. Not thread-safe."""

    def __init__(self) -> None:
        self._nodes: list[Node] = []
        self._edges: list[Edge] = []

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def add_node(
        self, labels: Iterable[str], properties: Mapping[str, PropertyValue]
    ) -> int:
        """Add a node and return its id. Ids are assigned sequentially."""
        label_tuple = tuple(labels)
        if not label_tuple or any(not lbl for lbl in label_tuple):
            raise EmptyLabels(f"node requires at least one non-empty label: {label_tuple!r}")
        props: dict[str, PropertyValue] = {}
        for key, value in properties.items():
            check_property_value(key, value)
            props[key] = list(value) if isinstance(value, list) else value
        node = Node(id=len(self._nodes), labels=label_tuple, properties=props)
        self._nodes.append(node)
        return node.id

    def add_edge(
        self,
        from_id: int,
        to_id: int,
        rel_type: str,
        properties: Mapping[str, PropertyValue] | None = None,
    ) -> int:
        """Add a directed edge and return its id. Endpoints must exist."""
        for endpoint in (from_id, to_id):
            if not (0 <= endpoint < len(self._nodes)):
                raise UnknownNode(f"edge endpoint {endpoint} does not exist")
        if not rel_type:
            raise EmptyRelType("relationship type must be non-empty")
        if not _REL_TYPE_RE.match(rel_type):
            raise InvalidRelType(
                f"relationship type must be uppercase-with-underscores: {rel_type!r}"
            )
        props: dict[str, PropertyValue] = {}
        if properties:
            for key, value in properties.items():
                check_property_value(key, value)
                props[key] = list(value) if isinstance(value, list) else value
        edge = Edge(
            id=len(self._edges),
            from_id=from_id,
            to_id=to_id,
            rel_type=rel_type,
            properties=props,
        )
        self._edges.append(edge)
        return edge.id

    def freeze(self) -> FrozenGraph:
        """Snapshot the builder into an immutable, indexed graph.

        Enforces that every node carries a 'name' property and that names are
        unique per label. Later builder mutations do not affect the snapshot.
        """
        seen: dict[tuple[str, str], int] = {}
        for node in self._nodes:
            if "name" not in node.properties:
                raise MissingName(f"node {node.id} ({'/'.join(node.labels)}) has no 'name'")
            name = str(node.properties["name"])
            for label in node.labels:
                key = (label, name)
                if key in seen:
                    raise DuplicateName(
                        f"nodes {seen[key]} and {node.id} share label {label!r} "
                        f"and name {name!r}"
                    )
                seen[key] = node.id
        nodes = [
            Node(id=n.id, labels=n.labels, properties=dict(n.properties))
            for n in self._nodes
        ]
        edges = [
            Edge(
                id=e.id,
                from_id=e.from_id,
                to_id=e.to_id,
                rel_type=e.rel_type,
                properties=dict(e.properties),
            )
            for e in self._edges
        ]
        return FrozenGraph(nodes, edges)


class FrozenGraph:
    """Immutable indexed snapshot of a built graph.

    Indexes: label -> node ids, and (node id, direction, rel type) -> edges.
    Construct via GraphBuilder.freeze().
    """

    def __init__(self, nodes: list[Node], edges: list[Edge]) -> None:
        self._nodes = nodes
        self._edges = edges
        self._label_index: dict[str, set[int]] = {}
        for node in nodes:
            for label in node.labels:
                self._label_index.setdefault(label, set()).add(node.id)
        # adjacency[node_id] = {rel_type: [edge, ...]} kept in insertion order
        self._out: dict[int, dict[str, list[Edge]]] = {n.id: {} for n in nodes}
        self._in: dict[int, dict[str, list[Edge]]] = {n.id: {} for n in nodes}
        for edge in edges:
            self._out[edge.from_id].setdefault(edge.rel_type, []).append(edge)
            self._in[edge.to_id].setdefault(edge.rel_type, []).append(edge)

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def nodes(self) -> list[Node]:
        return list(self._nodes)

    def edges(self) -> list[Edge]:
        return list(self._edges)

    def node(self, node_id: int) -> Node:
        if not (0 <= node_id < len(self._nodes)):
            raise UnknownNode(f"no node with id {node_id}")
        return self._nodes[node_id]

    def labels(self) -> set[str]:
        return set(self._label_index)

    def nodes_with_label(self, label: str) -> set[int]:
        """All node ids whose label set contains `label`; unknown label -> empty."""
        return set(self._label_index.get(label, ()))

    def edges_from(
        self,
        node_id: int,
        rel_type: str | None = None,
        direction: str = OUTGOING,
    ) -> list[Edge]:
        """Edges incident to a node, filtered by type and direction.

        direction is one of OUTGOING, INCOMING, BOTH. A self-loop is reported
        in both directions but listed once under BOTH.
        """
        self.node(node_id)  # raises UnknownNode
        if direction not in (OUTGOING, INCOMING, BOTH):
            raise ValueError(f"bad direction {direction!r}")
        result: list[Edge] = []
        seen_ids: set[int] = set()
        buckets = []
        if direction in (OUTGOING, BOTH):
            buckets.append(self._out[node_id])
        if direction in (INCOMING, BOTH):
            buckets.append(self._in[node_id])
        for bucket in buckets:
            if rel_type is None:
                groups = bucket.values()
            else:
                groups = [bucket.get(rel_type, [])]
            for group in groups:
                for edge in group:
                    if edge.id not in seen_ids:
                        seen_ids.add(edge.id)
                        result.append(edge)
        return result
