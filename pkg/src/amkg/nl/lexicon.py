"""Synonym lexicon, unit vocabulary, and out-of-scope trigger terms.

Surface forms are matched case-insensitively with longest-match-wins over a
shared word tokenization. Every canonical entity in the lexicon must exist
in the schema descriptor's entity lists; the build fails otherwise.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

from ..domain.records import DomainDataset, SchemaDescriptor

# words matched as lowercase tokens; internal . / - keep compounds together
# ("ti-6al-4v", "cc/hr", "0.2") as single tokens
_TOKEN_RE = re.compile(r"[a-z0-9]+(?:[./-][a-z0-9]+)*")

_NUMBER_RE = re.compile(r"^\d+(?:\.\d+)?$")

# unit suffix -> (canonical unit, multiplier into canonical unit)
UNIT_CONVERSIONS: dict[str, tuple[str, float]] = {
    "mm": ("mm", 1.0),
    "cm": ("mm", 10.0),
    "m": ("mm", 1000.0),
    "cc/hr": ("cc/hr", 1.0),
}

# comparison-hint vocabulary; phrases are token tuples
COMPARISON_HINTS: dict[tuple[str, ...], str] = {
    ("at", "least"): ">=",
    ("minimum",): ">=",
    ("at", "most"): "<=",
    ("under",): "<=",
    ("below",): "<=",
    ("over",): ">",
    ("above",): ">",
    ("more", "than"): ">",
    ("less", "than"): "<",
    ("exactly",): "=",
}

# quantitative-property hints found near a number
DIMENSION_WORDS: dict[str, str] = {
    "height": "build_z_mm",
    "heights": "build_z_mm",
    "tall": "build_z_mm",
    "width": "build_x_mm",
    "widths": "build_x_mm",
    "wide": "build_x_mm",
    "depth": "build_y_mm",
    "length": "build_y_mm",
    "lengths": "build_y_mm",
    "long": "build_y_mm",
    "resolution": "feature_resolution_mm",
    "resolutions": "feature_resolution_mm",
    "feature": "feature_resolution_mm",
    "deposition": "deposition_rate_cc_hr",
    "deposit": "deposition_rate_cc_hr",
    "deposits": "deposition_rate_cc_hr",
    "rate": "deposition_rate_cc_hr",
    "rates": "deposition_rate_cc_hr",
}

# topics the knowledge graph does not model; any hit flags the query
OUT_OF_SCOPE_TRIGGERS: tuple[str, ...] = (
    "tensile",
    "yield",
    "fatigue",
    "hardness",
    "anisotropic",
    "anisotropy",
    "microstructure",
    "porosity",
    "roughness",
    "cost",
    "price",
    "lead time",
    "orientation-dependent",
)


def fold_tokens(text: str) -> tuple[str, ...]:
    """Case-folded word tokens shared by lexicon surfaces and queries."""
    return tuple(_TOKEN_RE.findall(text.lower()))


def is_number_token(token: str) -> bool:
    return bool(_NUMBER_RE.match(token))


@dataclass(frozen=True)
class LexiconEntry:
    canonical: str
    label: str


class Lexicon:
    """Surface form -> canonical entity map plus trigger-term list."""

    def __init__(
        self,
        entries: dict[tuple[str, ...], LexiconEntry],
        triggers: tuple[tuple[str, ...], ...],
    ) -> None:
        self.entries = entries
        self.triggers = triggers
        self.max_surface_len = max((len(k) for k in entries), default=1)

    def lookup(self, tokens: tuple[str, ...]) -> LexiconEntry | None:
        return self.entries.get(tokens)

    def synonym_pairs(self) -> list[tuple[str, str, str]]:
        """(surface, canonical, label) triples where surface != canonical,
        sorted for deterministic prompt rendering."""
        pairs = []
        for surface_tokens, entry in self.entries.items():
            surface = " ".join(surface_tokens)
            if surface != entry.canonical.lower():
                pairs.append((surface, entry.canonical, entry.label))
        return sorted(pairs)


_FAMILY_SUFFIXES = ("alloys", "alloy", "materials", "metals")


def _default_extra_entries() -> list[dict[str, str]]:
    text = (
        resources.files("amkg.nl").joinpath("data", "lexicon.json").read_text("utf-8")
    )
    return json.loads(text)


def build_lexicon(
    schema: SchemaDescriptor,
    dataset: DomainDataset,
    extra_entries: list[dict[str, str]] | None = None,
) -> Lexicon:
    """Assemble the lexicon from entity names, dataset synonyms, family
    phrasings, and the shipped synonym file.

    Raises ValueError if a surface is ambiguous after case folding, is a bare
    number (which would shadow thresholds), or names an unknown entity.
    """
    if extra_entries is None:
        extra_entries = _default_extra_entries()

    entries: dict[tuple[str, ...], LexiconEntry] = {}

    def add(surface: str, canonical: str, label: str) -> None:
        if canonical not in schema.entities.get(label, ()):
            raise ValueError(f"lexicon entry {surface!r}: unknown {label} {canonical!r}")
        tokens = fold_tokens(surface)
        if not tokens:
            raise ValueError(f"lexicon surface {surface!r} has no tokens")
        if len(tokens) == 1 and is_number_token(tokens[0]):
            raise ValueError(f"lexicon surface {surface!r} is a bare number")
        existing = entries.get(tokens)
        entry = LexiconEntry(canonical=canonical, label=label)
        if existing is not None and existing != entry:
            raise ValueError(
                f"ambiguous surface {surface!r}: {existing.canonical} vs {canonical}"
            )
        entries[tokens] = entry

    for label, names in schema.entities.items():
        for name in names:
            add(name, name, label)
    for material in dataset.materials:
        for synonym in material.synonyms:
            add(synonym, material.name, "Material")
    for process in dataset.processes:
        add(process.abbreviation, process.name, "Process")
    for family in schema.entities.get("MaterialFamily", []):
        for suffix in _FAMILY_SUFFIXES:
            add(f"{family} {suffix}", family, "MaterialFamily")
            add(f"{family}-based {suffix}", family, "MaterialFamily")
            add(f"{family} based {suffix}", family, "MaterialFamily")
    for item in extra_entries:
        add(item["surface"], item["name"], item["label"])

    triggers = tuple(fold_tokens(term) for term in OUT_OF_SCOPE_TRIGGERS)
    return Lexicon(entries=entries, triggers=triggers)
