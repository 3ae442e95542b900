"""Seed-file parsing and dataset validation.

The seed file is one UTF-8 JSON document with top-level keys "materials",
"processes", "feedstocks", "post_processing", "fusion_techniques", "states",
"printable_by", and "state_transitions". Parsing is strict: unknown keys at
any level are format errors, and quantitative fields must already be in the
canonical units (lengths in mm, deposition rate in cc/hr); nothing is
converted at ingestion.
"""

from __future__ import annotations

import json

from .records import (
    FAMILIES,
    FEEDSTOCK_NAMES,
    CompatibilityRecord,
    DomainDataset,
    FeedstockSpec,
    FusionTechniqueSpec,
    MaterialSpec,
    MaterialStateSpec,
    PostProcessSpec,
    ProcessSpec,
    StateTransition,
    ValidationReport,
)


class SeedError(Exception):
    """Base class for seed-loading failures."""


class FormatError(SeedError):
    """Malformed document: bad JSON, wrong types, unknown keys."""


class DanglingReference(SeedError):
    """A record references an undeclared material/process/feedstock/step."""

    def __init__(self, problems: list[str]) -> None:
        super().__init__("; ".join(problems))
        self.problems = problems


class DuplicateRecord(SeedError):
    """Two records collide on a unique key."""

    def __init__(self, problems: list[str]) -> None:
        super().__init__("; ".join(problems))
        self.problems = problems


TOP_LEVEL_KEYS = (
    "materials",
    "processes",
    "feedstocks",
    "post_processing",
    "fusion_techniques",
    "states",
    "printable_by",
    "state_transitions",
)

_PROCESS_NUMERIC_FIELDS = (
    "deposition_rate_cc_hr",
    "feature_resolution_mm",
    "build_x_mm",
    "build_y_mm",
    "build_z_mm",
)


def _require_keys(obj: dict, allowed: tuple[str, ...], required: tuple[str, ...], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise FormatError(f"{path}: unknown key {key!r}")
    for key in required:
        if key not in obj:
            raise FormatError(f"{path}: missing key {key!r}")


def _string(obj: dict, key: str, path: str) -> str:
    value = obj[key]
    if not isinstance(value, str) or not value:
        raise FormatError(f"{path}.{key}: expected non-empty string, got {value!r}")
    return value


def _number(obj: dict, key: str, path: str) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(f"{path}.{key}: expected number, got {value!r}")
    return float(value)


def _string_list(obj: dict, key: str, path: str) -> tuple[str, ...]:
    value = obj[key]
    if not isinstance(value, list) or any(not isinstance(v, str) or not v for v in value):
        raise FormatError(f"{path}.{key}: expected list of non-empty strings")
    return tuple(value)


def _records(document: dict, key: str, path_prefix: str) -> list[tuple[dict, str]]:
    value = document[key]
    if not isinstance(value, list):
        raise FormatError(f"{key}: expected a list")
    out = []
    for i, item in enumerate(value):
        if not isinstance(item, dict):
            raise FormatError(f"{path_prefix}[{i}]: expected an object")
        out.append((item, f"{path_prefix}[{i}]"))
    return out


def load_seed(document_text: str) -> DomainDataset:
    """Parse and cross-check a seed document into a typed dataset.

    Raises FormatError for structural problems, DanglingReference when a
    record names an undeclared entity, and DuplicateRecord for unique-key
    collisions. Count constraints are checked separately by
    validate_dataset, not here.
    """
    if not document_text.strip():
        raise FormatError("empty document")
    try:
        document = json.loads(document_text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(document, dict):
        raise FormatError("top level must be a JSON object")
    _require_keys(document, TOP_LEVEL_KEYS, TOP_LEVEL_KEYS, "document")

    duplicates: list[str] = []
    dangling: list[str] = []

    materials: list[MaterialSpec] = []
    for obj, path in _records(document, "materials", "materials"):
        _require_keys(obj, ("name", "family", "synonyms"), ("name", "family"), path)
        name = _string(obj, "name", path)
        family = _string(obj, "family", path)
        if family not in FAMILIES:
            raise FormatError(f"{path}.family: {family!r} is not one of {', '.join(FAMILIES)}")
        synonyms = _string_list(obj, "synonyms", path) if "synonyms" in obj else ()
        materials.append(MaterialSpec(name=name, family=family, synonyms=synonyms))
    material_names = [m.name for m in materials]
    for name in sorted({n for n in material_names if material_names.count(n) > 1}):
        duplicates.append(f"material {name!r} declared more than once")

    feedstocks: list[FeedstockSpec] = []
    for obj, path in _records(document, "feedstocks", "feedstocks"):
        _require_keys(obj, ("name", "size_note"), ("name", "size_note"), path)
        name = _string(obj, "name", path)
        if name not in FEEDSTOCK_NAMES:
            raise FormatError(f"{path}.name: {name!r} is not one of {', '.join(FEEDSTOCK_NAMES)}")
        feedstocks.append(FeedstockSpec(name=name, size_note=_string(obj, "size_note", path)))
    feedstock_names = {f.name for f in feedstocks}

    post_processing: list[PostProcessSpec] = []
    for obj, path in _records(document, "post_processing", "post_processing"):
        _require_keys(obj, ("name",), ("name",), path)
        post_processing.append(PostProcessSpec(name=_string(obj, "name", path)))
    post_names = [s.name for s in post_processing]
    for name in sorted({n for n in post_names if post_names.count(n) > 1}):
        duplicates.append(f"post-processing step {name!r} declared more than once")

    fusion_techniques: list[FusionTechniqueSpec] = []
    for obj, path in _records(document, "fusion_techniques", "fusion_techniques"):
        _require_keys(obj, ("name",), ("name",), path)
        fusion_techniques.append(FusionTechniqueSpec(name=_string(obj, "name", path)))
    fusion_names = {t.name for t in fusion_techniques}

    states: list[MaterialStateSpec] = []
    for obj, path in _records(document, "states", "states"):
        _require_keys(obj, ("name",), ("name",), path)
        states.append(MaterialStateSpec(name=_string(obj, "name", path)))
    state_names = {s.name for s in states}

    processes: list[ProcessSpec] = []
    process_keys = (
        ("name", "abbreviation", "feedstock_names", "fusion_technique")
        + _PROCESS_NUMERIC_FIELDS
        + ("post_processing_names",)
    )
    for obj, path in _records(document, "processes", "processes"):
        _require_keys(obj, process_keys, process_keys, path)
        fs_names = _string_list(obj, "feedstock_names", path)
        if not fs_names:
            raise FormatError(f"{path}.feedstock_names: must be non-empty")
        for fs in fs_names:
            if fs not in feedstock_names:
                dangling.append(f"{path}: feedstock {fs!r} is not declared")
        fusion = _string(obj, "fusion_technique", path)
        if fusion not in fusion_names:
            dangling.append(f"{path}: fusion technique {fusion!r} is not declared")
        pp_names = _string_list(obj, "post_processing_names", path)
        for pp in pp_names:
            if pp not in post_names:
                dangling.append(f"{path}: post-processing step {pp!r} is not declared")
        processes.append(
            ProcessSpec(
                name=_string(obj, "name", path),
                abbreviation=_string(obj, "abbreviation", path),
                feedstock_names=fs_names,
                fusion_technique=fusion,
                deposition_rate_cc_hr=_number(obj, "deposition_rate_cc_hr", path),
                feature_resolution_mm=_number(obj, "feature_resolution_mm", path),
                build_x_mm=_number(obj, "build_x_mm", path),
                build_y_mm=_number(obj, "build_y_mm", path),
                build_z_mm=_number(obj, "build_z_mm", path),
                post_processing_names=pp_names,
            )
        )
    process_names = [p.name for p in processes]
    for name in sorted({n for n in process_names if process_names.count(n) > 1}):
        duplicates.append(f"process {name!r} declared more than once")

    printable_by: list[CompatibilityRecord] = []
    seen_pairs: set[tuple[str, str]] = set()
    for obj, path in _records(document, "printable_by", "printable_by"):
        _require_keys(obj, ("material_name", "process_name"), ("material_name", "process_name"), path)
        material = _string(obj, "material_name", path)
        process = _string(obj, "process_name", path)
        if material not in material_names:
            dangling.append(f"{path}: material {material!r} is not declared")
        if process not in process_names:
            dangling.append(f"{path}: process {process!r} is not declared")
        if (material, process) in seen_pairs:
            duplicates.append(f"{path}: duplicate pair ({material!r}, {process!r})")
        seen_pairs.add((material, process))
        printable_by.append(CompatibilityRecord(material_name=material, process_name=process))

    state_transitions: list[StateTransition] = []
    for obj, path in _records(document, "state_transitions", "state_transitions"):
        _require_keys(obj, ("from_state", "to_state", "via_step"), ("from_state", "to_state", "via_step"), path)
        from_state = _string(obj, "from_state", path)
        to_state = _string(obj, "to_state", path)
        via_step = _string(obj, "via_step", path)
        if from_state == to_state:
            raise FormatError(f"{path}: self-transition {from_state!r} -> {to_state!r}")
        if from_state not in state_names:
            dangling.append(f"{path}: state {from_state!r} is not declared")
        if to_state not in state_names:
            dangling.append(f"{path}: state {to_state!r} is not declared")
        if via_step not in post_names:
            dangling.append(f"{path}: post-processing step {via_step!r} is not declared")
        state_transitions.append(
            StateTransition(from_state=from_state, to_state=to_state, via_step=via_step)
        )

    if duplicates:
        raise DuplicateRecord(duplicates)
    if dangling:
        raise DanglingReference(dangling)

    return DomainDataset(
        materials=tuple(materials),
        processes=tuple(processes),
        feedstocks=tuple(feedstocks),
        post_processing=tuple(post_processing),
        fusion_techniques=tuple(fusion_techniques),
        states=tuple(states),
        printable_by=tuple(printable_by),
        state_transitions=tuple(state_transitions),
    )


def validate_dataset(dataset: DomainDataset) -> ValidationReport:
    """Check inventory counts and coverage; violations go into the report.

    Expected inventory: 53 materials across all 7 families, 9 processes,
    4 feedstocks; every process printable with at least one material and
    vice versa; every quantitative process attribute strictly positive.
    """
    violations: list[str] = []
    counts = {
        "materials": len(dataset.materials),
        "families": len({m.family for m in dataset.materials}),
        "processes": len(dataset.processes),
        "feedstocks": len(dataset.feedstocks),
        "post_processing": len(dataset.post_processing),
        "fusion_techniques": len(dataset.fusion_techniques),
        "states": len(dataset.states),
        "printable_by": len(dataset.printable_by),
    }
    expected = {
        "materials": ("material", 53),
        "families": ("family", 7),
        "processes": ("process", 9),
        "feedstocks": ("feedstock", 4),
    }
    for key, (singular, want) in expected.items():
        if counts[key] != want:
            violations.append(f"{singular} count {counts[key]} != {want}")

    materials_with_process = {r.material_name for r in dataset.printable_by}
    processes_with_material = {r.process_name for r in dataset.printable_by}
    for material in dataset.materials:
        if material.name not in materials_with_process:
            violations.append(f"material {material.name!r} has no compatible process")
    for process in dataset.processes:
        if process.name not in processes_with_material:
            violations.append(f"process {process.name!r} has no compatible material")
        for field_name in _PROCESS_NUMERIC_FIELDS:
            value = getattr(process, field_name)
            if not value > 0:
                violations.append(
                    f"process {process.name!r}: {field_name} = {value} is not positive"
                )
    return ValidationReport(counts=counts, violations=tuple(violations))
