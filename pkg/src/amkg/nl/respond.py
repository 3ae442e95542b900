"""Result-table rendering into user-facing text with standardized units."""

from __future__ import annotations

from ..cypher.executor import ResultTable
from ..domain.records import SchemaDescriptor
from .intent import IntentCategory

REJECTION_SENTENCE = (
    "Sorry, the current knowledge graph does not support this type of query."
)
NO_RESULTS_SENTENCE = "No matching records found in the knowledge graph."


def _strip_variable(column: str) -> str:
    # "p.build_z_mm" -> "build_z_mm"; aliases and count(...) pass through
    head, dot, tail = column.partition(".")
    return tail if dot and " " not in head else column


def _render_value(value, unit: str | None) -> str:
    if isinstance(value, bool):
        text = "true" if value else "false"
    elif isinstance(value, float):
        text = str(int(value)) if value.is_integer() else str(value)
    elif isinstance(value, list):
        text = ", ".join(str(v) for v in value)
    elif value is None:
        text = "-"
    else:
        text = str(value)
    return f"{text} {unit}" if unit and value is not None else text


def format_response(
    intent: IntentCategory, table: ResultTable, schema: SchemaDescriptor
) -> str:
    """Render rows per the intent's shape.

    Name lists become one bullet per row; scalar capability projections
    become "property: value unit" lines; an empty table is always the
    no-results sentence, byte-exact.
    """
    if not table.rows:
        return NO_RESULTS_SENTENCE

    props = [_strip_variable(col) for col in table.columns]
    units = [schema.unit_of(prop) for prop in props]

    # single-row property projection with units (DfAM / capability lookups)
    if len(table.rows) == 1 and any(units):
        row = table.rows[0]
        lines = [
            f"{prop}: {_render_value(value, unit)}"
            for prop, unit, value in zip(props, units, row)
        ]
        return "\n".join(lines)

    # bare scalar (count aggregates)
    if len(table.rows) == 1 and len(table.rows[0]) == 1:
        value = table.rows[0][0]
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return _render_value(value, None)

    lines = []
    for row in table.rows:
        cells = [_render_value(value, unit) for value, unit in zip(row, units)]
        lines.append("- " + " / ".join(cells))
    return "\n".join(lines)
