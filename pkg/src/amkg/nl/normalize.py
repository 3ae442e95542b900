"""Query normalization: case folding, entity resolution, unit handling.

Entities resolve by case-insensitive longest match against the lexicon;
matched spans never overlap. Numbers pick up a canonical unit (lengths to
mm, rates to cc/hr), a comparison hint from nearby words, and a
quantitative-property hint from nearby dimension words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lexicon import (
    COMPARISON_HINTS,
    DIMENSION_WORDS,
    UNIT_CONVERSIONS,
    Lexicon,
    fold_tokens,
    is_number_token,
)


class EmptyQuery(Exception):
    """The query text was empty or whitespace-only."""


_NUMBER_WITH_UNIT_RE = re.compile(r"^(\d+(?:\.\d+)?)(mm|cm|m|cc/hr)$")

_HINT_WINDOW = 3  # tokens scanned before a number for a comparison hint
_DIMENSION_WINDOW = 4  # tokens scanned around a number for a dimension word


@dataclass(frozen=True)
class ResolvedEntity:
    start: int  # token index, inclusive
    end: int  # token index, exclusive
    surface: str
    canonical: str
    label: str


@dataclass(frozen=True)
class NumericConstraint:
    start: int  # token index of the number
    end: int  # exclusive; covers the unit token when present
    value: float  # unit-normalized (mm or cc/hr)
    unit: str | None  # canonical unit, None when the text had none
    comparison: str | None  # ">=", "<=", ">", "<", "=" or None
    dimension: str | None  # process property hint, e.g. "build_z_mm"


@dataclass(frozen=True)
class NormalizedQuery:
    original: str
    tokens: tuple[str, ...]
    entities: tuple[ResolvedEntity, ...]
    constraints: tuple[NumericConstraint, ...]
    out_of_scope: bool

    def entities_with_label(self, label: str) -> tuple[ResolvedEntity, ...]:
        return tuple(e for e in self.entities if e.label == label)

    def first_entity(self, label: str) -> ResolvedEntity | None:
        for entity in self.entities:
            if entity.label == label:
                return entity
        return None

    def rendered(self) -> str:
        """Normalized text: canonical entity names, canonical units.

        Re-normalizing the rendered text resolves the same entities and
        constraints (idempotence).
        """
        replacements: dict[int, tuple[int, str]] = {}
        for entity in self.entities:
            replacements[entity.start] = (entity.end, entity.canonical)
        for constraint in self.constraints:
            value = _format_number(constraint.value)
            text = f"{value} {constraint.unit}" if constraint.unit else value
            replacements[constraint.start] = (constraint.end, text)
        out: list[str] = []
        i = 0
        while i < len(self.tokens):
            if i in replacements:
                end, text = replacements[i]
                out.append(text)
                i = end
            else:
                out.append(self.tokens[i])
                i += 1
        return " ".join(out)


def _format_number(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else str(value)


def _split_number_unit(token: str) -> tuple[str, str | None]:
    match = _NUMBER_WITH_UNIT_RE.match(token)
    if match:
        return match.group(1), match.group(2)
    return token, None


def _resolve_entities(
    tokens: tuple[str, ...], lexicon: Lexicon
) -> tuple[ResolvedEntity, ...]:
    entities: list[ResolvedEntity] = []
    i = 0
    while i < len(tokens):
        match = None
        for length in range(min(lexicon.max_surface_len, len(tokens) - i), 0, -1):
            candidate = tokens[i : i + length]
            entry = lexicon.lookup(candidate)
            if entry is not None:
                match = (length, entry)
                break
        if match is not None:
            length, entry = match
            entities.append(
                ResolvedEntity(
                    start=i,
                    end=i + length,
                    surface=" ".join(tokens[i : i + length]),
                    canonical=entry.canonical,
                    label=entry.label,
                )
            )
            i += length
        else:
            i += 1
    return tuple(entities)


def _comparison_hint(tokens: tuple[str, ...], index: int, occupied: set[int]) -> str | None:
    start = max(0, index - _HINT_WINDOW)
    window = range(start, index)
    for j in reversed(window):  # nearest hint wins
        if j in occupied:
            continue
        for phrase, op in COMPARISON_HINTS.items():
            if len(phrase) == 1 and tokens[j] == phrase[0]:
                return op
            if (
                len(phrase) == 2
                and j + 1 < index
                and tokens[j] == phrase[0]
                and tokens[j + 1] == phrase[1]
            ):
                return op
    return None


def _dimension_hint(
    tokens: tuple[str, ...], index: int, end: int, occupied: set[int]
) -> str | None:
    before = range(max(0, index - _DIMENSION_WINDOW), index)
    for j in reversed(tuple(before)):  # nearest-before wins
        if j not in occupied and tokens[j] in DIMENSION_WORDS:
            return DIMENSION_WORDS[tokens[j]]
    after = range(end, min(len(tokens), end + _DIMENSION_WINDOW))
    for j in after:
        if j not in occupied and tokens[j] in DIMENSION_WORDS:
            return DIMENSION_WORDS[tokens[j]]
    return None


def _extract_constraints(
    tokens: tuple[str, ...], entities: tuple[ResolvedEntity, ...]
) -> tuple[NumericConstraint, ...]:
    occupied = {i for e in entities for i in range(e.start, e.end)}
    constraints: list[NumericConstraint] = []
    for i, token in enumerate(tokens):
        if i in occupied:
            continue
        number_text, inline_unit = _split_number_unit(token)
        if not is_number_token(number_text):
            continue
        raw_value = float(number_text)
        end = i + 1
        unit_token = inline_unit
        if unit_token is None and end < len(tokens) and end not in occupied:
            if tokens[end] in UNIT_CONVERSIONS:
                unit_token = tokens[end]
                end += 1
        if unit_token is not None:
            unit, factor = UNIT_CONVERSIONS[unit_token]
            value = raw_value * factor
        else:
            unit, value = None, raw_value
        dimension = _dimension_hint(tokens, i, end, occupied)
        if unit == "cc/hr":
            dimension = "deposition_rate_cc_hr"
        constraints.append(
            NumericConstraint(
                start=i,
                end=end,
                value=value,
                unit=unit,
                comparison=_comparison_hint(tokens, i, occupied),
                dimension=dimension,
            )
        )
    return tuple(constraints)


def _out_of_scope(tokens: tuple[str, ...], lexicon: Lexicon) -> bool:
    for trigger in lexicon.triggers:
        n = len(trigger)
        for i in range(len(tokens) - n + 1):
            if tokens[i : i + n] == trigger:
                return True
    return False


def normalize(text: str, lexicon: Lexicon) -> NormalizedQuery:
    """Normalize raw question text. Deterministic for fixed inputs."""
    if not text or not text.strip():
        raise EmptyQuery("query text is empty")
    tokens = fold_tokens(text)
    if not tokens:
        raise EmptyQuery("query text has no words")
    entities = _resolve_entities(tokens, lexicon)
    constraints = _extract_constraints(tokens, entities)
    return NormalizedQuery(
        original=text,
        tokens=tokens,
        entities=entities,
        constraints=constraints,
        out_of_scope=_out_of_scope(tokens, lexicon),
    )
