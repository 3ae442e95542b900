"""Typed seed records and the derived schema descriptor.

The seed dataset enumerates the domain: materials grouped into seven
families, nine process categories with quantitative capabilities, four
feedstock formats, post-processing steps, fusion techniques, material
states, and the relationships between them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

FAMILIES = (
    "Nickel",
    "Iron",
    "Copper",
    "Cobalt",
    "Titanium",
    "Aluminum",
    "Refractory",
)

FEEDSTOCK_NAMES = ("Powder", "Wire", "Foil", "Bar")

# Graph vocabulary: node labels with their properties (and display units),
# and relationship types with their endpoint labels.
LABEL_PROPERTIES: dict[str, dict[str, str | None]] = {
    "Material": {"name": None},
    "MaterialFamily": {"name": None},
    "Process": {
        "abbreviation": None,
        "build_x_mm": "mm",
        "build_y_mm": "mm",
        "build_z_mm": "mm",
        "deposition_rate_cc_hr": "cc/hr",
        "feature_resolution_mm": "mm",
        "name": None,
    },
    "Feedstock": {"name": None, "size_note": None},
    "FusionTechnique": {"name": None},
    "PostProcess": {"name": None},
    "MaterialState": {"name": None},
}

RELATIONSHIPS: dict[str, tuple[str, str]] = {
    "BELONGS_TO": ("Material", "MaterialFamily"),
    "PRINTABLE_BY": ("Material", "Process"),
    "USES_FEEDSTOCK": ("Process", "Feedstock"),
    "USES_FUSION": ("Process", "FusionTechnique"),
    "REQUIRES_POST": ("Process", "PostProcess"),
    "TRANSITIONS_TO": ("MaterialState", "MaterialState"),
    "VIA_STEP": ("MaterialState", "PostProcess"),
}


@dataclass(frozen=True)
class MaterialSpec:
    name: str
    family: str
    synonyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class ProcessSpec:
    name: str
    abbreviation: str
    feedstock_names: tuple[str, ...]
    fusion_technique: str
    deposition_rate_cc_hr: float
    feature_resolution_mm: float
    build_x_mm: float
    build_y_mm: float
    build_z_mm: float
    post_processing_names: tuple[str, ...]


@dataclass(frozen=True)
class FeedstockSpec:
    name: str
    size_note: str


@dataclass(frozen=True)
class PostProcessSpec:
    name: str


@dataclass(frozen=True)
class FusionTechniqueSpec:
    name: str


@dataclass(frozen=True)
class MaterialStateSpec:
    name: str


@dataclass(frozen=True)
class CompatibilityRecord:
    material_name: str
    process_name: str


@dataclass(frozen=True)
class StateTransition:
    from_state: str
    to_state: str
    via_step: str


@dataclass(frozen=True)
class DomainDataset:
    materials: tuple[MaterialSpec, ...]
    processes: tuple[ProcessSpec, ...]
    feedstocks: tuple[FeedstockSpec, ...]
    post_processing: tuple[PostProcessSpec, ...]
    fusion_techniques: tuple[FusionTechniqueSpec, ...]
    states: tuple[MaterialStateSpec, ...]
    printable_by: tuple[CompatibilityRecord, ...]
    state_transitions: tuple[StateTransition, ...]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_dataset: a list of violation messages."""

    counts: dict[str, int]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class SchemaDescriptor:
    """Derived graph vocabulary: labels, properties with units,
    relationship endpoints, and entity name lists per label."""

    labels: dict[str, dict[str, str | None]]
    relationships: dict[str, tuple[str, str]]
    entities: dict[str, list[str]]

    def unit_of(self, prop: str) -> str | None:
        for props in self.labels.values():
            unit = props.get(prop)
            if unit is not None:
                return unit
        return None

    def to_json(self) -> str:
        """Stable JSON rendering (alphabetical keys)."""
        doc = {
            "labels": {
                label: {prop: unit for prop, unit in sorted(props.items())}
                for label, props in sorted(self.labels.items())
            },
            "relationships": {
                rel: {"from": ends[0], "to": ends[1]}
                for rel, ends in sorted(self.relationships.items())
            },
            "entities": {
                label: list(names) for label, names in sorted(self.entities.items())
            },
        }
        return json.dumps(doc, indent=2, sort_keys=True)


def schema_summary(dataset: DomainDataset) -> SchemaDescriptor:
    """Derive the schema descriptor from a dataset, deterministically.

    Output is a function of the dataset alone: labels and relationships are
    the fixed graph vocabulary; entity lists are sorted alphabetically.
    """
    entities = {
        "Material": sorted(m.name for m in dataset.materials),
        "MaterialFamily": sorted({m.family for m in dataset.materials}),
        "Process": sorted(p.name for p in dataset.processes),
        "Feedstock": sorted(f.name for f in dataset.feedstocks),
        "FusionTechnique": sorted(t.name for t in dataset.fusion_techniques),
        "PostProcess": sorted(s.name for s in dataset.post_processing),
        "MaterialState": sorted(s.name for s in dataset.states),
    }
    labels = {
        label: dict(sorted(props.items()))
        for label, props in sorted(LABEL_PROPERTIES.items())
    }
    relationships = dict(sorted(RELATIONSHIPS.items()))
    return SchemaDescriptor(labels=labels, relationships=relationships, entities=entities)
