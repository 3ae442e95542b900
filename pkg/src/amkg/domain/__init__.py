"""Metal-AM domain: seed records, ingestion, validation, graph construction."""

from .build import build_graph, default_seed_text, load_default_dataset
from .loader import (
    DanglingReference,
    DuplicateRecord,
    FormatError,
    SeedError,
    load_seed,
    validate_dataset,
)
from .records import (
    FAMILIES,
    FEEDSTOCK_NAMES,
    CompatibilityRecord,
    DomainDataset,
    FeedstockSpec,
    MaterialSpec,
    PostProcessSpec,
    ProcessSpec,
    SchemaDescriptor,
    StateTransition,
    ValidationReport,
    schema_summary,
)

__all__ = [
    "FAMILIES",
    "FEEDSTOCK_NAMES",
    "CompatibilityRecord",
    "DanglingReference",
    "DomainDataset",
    "DuplicateRecord",
    "FeedstockSpec",
    "FormatError",
    "MaterialSpec",
    "PostProcessSpec",
    "ProcessSpec",
    "SchemaDescriptor",
    "SeedError",
    "StateTransition",
    "ValidationReport",
    "build_graph",
    "default_seed_text",
    "load_default_dataset",
    "load_seed",
    "schema_summary",
    "validate_dataset",
]
