"""Few-shot prompt assembly.

The prompt has three sections: a system section (schema overview,
relationship definitions, synonym excerpt, output rules), an exemplar
section (curated question/Cypher pairs across all eight categories plus
negative pairs mapping to the refusal token), and a user section with the
normalized question. Assembly is deterministic and fits a character budget;
when over budget, exemplars are dropped round-robin per category from the
end, never below three per category.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..domain.records import SchemaDescriptor
from .guard import guard
from .intent import IntentCategory
from .lexicon import Lexicon
from .normalize import NormalizedQuery
from .rules import UNSUPPORTED

DEFAULT_BUDGET = 24_000

MIN_POSITIVES_PER_CATEGORY = 6
MIN_NEGATIVES = 4
TRIM_FLOOR_PER_CATEGORY = 3

_SYNONYM_EXCERPT_LIMIT = 60

CATEGORY_ORDER = tuple(
    c.value for c in IntentCategory if c is not IntentCategory.UNSUPPORTED
)


class PromptBankError(Exception):
    """The exemplar bank does not meet the coverage contract."""


class BudgetImpossible(Exception):
    """Mandatory prompt sections alone exceed the character budget."""


@dataclass(frozen=True)
class Exemplar:
    category: str
    question: str
    cypher: str

    @property
    def is_negative(self) -> bool:
        return self.category == IntentCategory.UNSUPPORTED.value


def load_exemplar_bank(text: str | None = None) -> list[Exemplar]:
    """The shipped exemplar bank, or one parsed from the given JSON text."""
    if text is None:
        text = (
            resources.files("amkg.nl").joinpath("data", "exemplars.json").read_text("utf-8")
        )
    raw = json.loads(text)
    bank = []
    for item in raw:
        bank.append(
            Exemplar(category=item["category"], question=item["question"], cypher=item["cypher"])
        )
    return bank


@dataclass(frozen=True)
class PromptDocument:
    system_text: str
    exemplar_text: str
    user_text: str
    budget: int
    positive_count: int
    negative_count: int

    @property
    def total_length(self) -> int:
        return len(self.system_text) + len(self.exemplar_text) + len(self.user_text)

    def messages(self) -> list[dict[str, str]]:
        """Chat-completions message list: system carries schema + exemplars."""
        return [
            {"role": "system", "content": self.system_text + "\n\n" + self.exemplar_text},
            {"role": "user", "content": self.user_text},
        ]


def _render_system(schema: SchemaDescriptor, lexicon: Lexicon | None) -> str:
    lines = [
        "You translate questions about metal additive manufacturing into a",
        "single read-only Cypher query over the knowledge graph described",
        "below. Use only these labels, relationship types, and properties.",
        "Output exactly one Cypher query and nothing else. If the question",
        "cannot be answered from this schema, respond with: unsupported query",
        "",
        "Labels and properties:",
    ]
    for label, props in schema.labels.items():
        rendered = ", ".join(
            f"{prop} [{unit}]" if unit else prop for prop, unit in props.items()
        )
        lines.append(f"- {label}({rendered})")
    lines.append("")
    lines.append("Relationships:")
    for rel, (from_label, to_label) in schema.relationships.items():
        lines.append(f"- ({from_label})-[:{rel}]->({to_label})")
    lines.append("")
    lines.append("Entities:")
    for label, names in schema.entities.items():
        lines.append(f"- {label}: " + "; ".join(names))
    if lexicon is not None:
        pairs = lexicon.synonym_pairs()[:_SYNONYM_EXCERPT_LIMIT]
        if pairs:
            lines.append("")
            lines.append("Synonyms:")
            for surface, canonical, label in pairs:
                lines.append(f"- {surface} -> {canonical} [{label}]")
    return "\n".join(lines)


def _render_exemplars(exemplars: list[Exemplar]) -> str:
    blocks = []
    for exemplar in exemplars:
        blocks.append(f"Question: {exemplar.question}\nCypher: {exemplar.cypher}")
    return "Examples:\n\n" + "\n\n".join(blocks)


def _render_user(normalized: NormalizedQuery) -> str:
    return normalized.rendered() + "\n# original: " + normalized.original


def check_bank(bank: list[Exemplar]) -> dict[str, list[Exemplar]]:
    """Group by category and enforce the coverage contract."""
    by_category: dict[str, list[Exemplar]] = {c: [] for c in CATEGORY_ORDER}
    negatives: list[Exemplar] = []
    for exemplar in bank:
        if exemplar.is_negative:
            if exemplar.cypher != UNSUPPORTED:
                raise PromptBankError(
                    f"negative exemplar {exemplar.question!r} must map to {UNSUPPORTED}"
                )
            negatives.append(exemplar)
        elif exemplar.category in by_category:
            by_category[exemplar.category].append(exemplar)
        else:
            raise PromptBankError(f"unknown category {exemplar.category!r}")
    for category, items in by_category.items():
        if len(items) < MIN_POSITIVES_PER_CATEGORY:
            raise PromptBankError(
                f"category {category} has {len(items)} positives,"
                f" needs {MIN_POSITIVES_PER_CATEGORY}"
            )
    if len(negatives) < MIN_NEGATIVES:
        raise PromptBankError(f"bank has {len(negatives)} negatives, needs {MIN_NEGATIVES}")
    by_category[IntentCategory.UNSUPPORTED.value] = negatives
    return by_category


def build_prompt(
    schema: SchemaDescriptor,
    bank: list[Exemplar],
    normalized: NormalizedQuery,
    lexicon: Lexicon | None = None,
    budget: int = DEFAULT_BUDGET,
) -> PromptDocument:
    """Assemble the prompt document within the character budget.

    Every positive exemplar's Cypher is parsed and schema-validated here, at
    build time, so an invalid exemplar can never be shown to the model.
    Deterministic for fixed inputs.
    """
    grouped = check_bank(bank)
    for category in CATEGORY_ORDER:
        for exemplar in grouped[category]:
            guard(exemplar.cypher, schema)

    system_text = _render_system(schema, lexicon)
    user_text = _render_user(normalized)
    negatives = grouped[IntentCategory.UNSUPPORTED.value]
    kept: dict[str, list[Exemplar]] = {c: list(grouped[c]) for c in CATEGORY_ORDER}

    def assemble() -> tuple[str, int]:
        ordered: list[Exemplar] = []
        for category in CATEGORY_ORDER:
            ordered.extend(kept[category])
        positive_count = len(ordered)
        ordered.extend(negatives)
        return _render_exemplars(ordered), positive_count

    exemplar_text, positive_count = assemble()
    while len(system_text) + len(exemplar_text) + len(user_text) > budget:
        dropped = False
        for category in CATEGORY_ORDER:
            if len(kept[category]) > TRIM_FLOOR_PER_CATEGORY:
                kept[category].pop()
                dropped = True
                exemplar_text, positive_count = assemble()
                if len(system_text) + len(exemplar_text) + len(user_text) <= budget:
                    break
        if not dropped:
            raise BudgetImpossible(
                f"mandatory sections need more than the {budget}-character budget"
            )

    return PromptDocument(
        system_text=system_text,
        exemplar_text=exemplar_text,
        user_text=user_text,
        budget=budget,
        positive_count=positive_count,
        negative_count=len(negatives),
    )
