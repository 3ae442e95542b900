"""Dataset-to-graph construction.

One node per material, family, process, feedstock, fusion technique,
post-processing step, and material state; edges realize the compatibility,
requirement, and transition relationships. Node insertion order is
deterministic (seed order, families in their canonical order), which fixes
the executor's tie-break ordering.
"""

from __future__ import annotations

from importlib import resources

from ..graph import FrozenGraph, GraphBuilder
from .loader import load_seed
from .records import FAMILIES, DomainDataset

DEFAULT_SEED_RESOURCE = "seed.json"


def default_seed_text() -> str:
    """The seed document shipped with the package."""
    return (
        resources.files("amkg.domain")
        .joinpath("data", DEFAULT_SEED_RESOURCE)
        .read_text(encoding="utf-8")
    )


def load_default_dataset() -> DomainDataset:
    return load_seed(default_seed_text())


def build_graph(dataset: DomainDataset) -> FrozenGraph:
    """Construct and freeze the knowledge graph for a validated dataset."""
    builder = GraphBuilder()

    material_ids = {
        m.name: builder.add_node(["Material"], {"name": m.name}) for m in dataset.materials
    }
    used_families = {m.family for m in dataset.materials}
    family_ids = {
        family: builder.add_node(["MaterialFamily"], {"name": family})
        for family in FAMILIES
        if family in used_families
    }
    process_ids = {
        p.name: builder.add_node(
            ["Process"],
            {
                "name": p.name,
                "abbreviation": p.abbreviation,
                "deposition_rate_cc_hr": p.deposition_rate_cc_hr,
                "feature_resolution_mm": p.feature_resolution_mm,
                "build_x_mm": p.build_x_mm,
                "build_y_mm": p.build_y_mm,
                "build_z_mm": p.build_z_mm,
            },
        )
        for p in dataset.processes
    }
    feedstock_ids = {
        f.name: builder.add_node(["Feedstock"], {"name": f.name, "size_note": f.size_note})
        for f in dataset.feedstocks
    }
    fusion_ids = {
        t.name: builder.add_node(["FusionTechnique"], {"name": t.name})
        for t in dataset.fusion_techniques
    }
    post_ids = {
        s.name: builder.add_node(["PostProcess"], {"name": s.name})
        for s in dataset.post_processing
    }
    state_ids = {
        s.name: builder.add_node(["MaterialState"], {"name": s.name})
        for s in dataset.states
    }

    for material in dataset.materials:
        builder.add_edge(material_ids[material.name], family_ids[material.family], "BELONGS_TO")
    for record in dataset.printable_by:
        builder.add_edge(
            material_ids[record.material_name], process_ids[record.process_name], "PRINTABLE_BY"
        )
    for process in dataset.processes:
        pid = process_ids[process.name]
        for feedstock in process.feedstock_names:
            builder.add_edge(pid, feedstock_ids[feedstock], "USES_FEEDSTOCK")
        builder.add_edge(pid, fusion_ids[process.fusion_technique], "USES_FUSION")
        for step in process.post_processing_names:
            builder.add_edge(pid, post_ids[step], "REQUIRES_POST")
    for transition in dataset.state_transitions:
        builder.add_edge(
            state_ids[transition.from_state], state_ids[transition.to_state], "TRANSITIONS_TO"
        )
        builder.add_edge(
            state_ids[transition.from_state], post_ids[transition.via_step], "VIA_STEP"
        )

    return builder.freeze()
