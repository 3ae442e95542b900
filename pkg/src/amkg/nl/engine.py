"""End-to-end question answering.

The engine bundles the immutable pieces (dataset, frozen graph, schema,
lexicon, exemplar bank) and a translator mode. `answer` orchestrates
normalize -> classify -> translate -> guard -> execute -> format. Every
query string that reaches the executor has passed the guard; there is no
other execution path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..cypher import CypherError, execute, render_ast
from ..cypher.executor import ResultTable
from ..domain.build import build_graph, default_seed_text
from ..domain.loader import load_seed
from ..domain.records import DomainDataset, SchemaDescriptor, schema_summary
from ..graph import FrozenGraph
from .guard import guard
from .intent import IntentCategory, classify_intent
from .lexicon import Lexicon, build_lexicon
from .normalize import EmptyQuery, NormalizedQuery, normalize
from .prompt import BudgetImpossible, Exemplar, PromptDocument, build_prompt, load_exemplar_bank
from .remote import RemoteConfig, TranslatorError, translate_remote
from .respond import REJECTION_SENTENCE, format_response
from .rules import UNSUPPORTED, translate_rule

TRANSLATOR_MODES = ("rule", "remote", "fallback")

STATUS_ANSWERED = "answered"
STATUS_UNSUPPORTED = "unsupported"
STATUS_ERROR = "error"


@dataclass(frozen=True)
class Answer:
    status: str  # answered | unsupported | error
    intent: str  # IntentCategory value
    cypher: str | None
    columns: tuple[str, ...]
    rows: list[tuple]
    text: str
    elapsed_ms: int
    timing_note: str


@dataclass
class Engine:
    dataset: DomainDataset
    graph: FrozenGraph
    schema: SchemaDescriptor
    lexicon: Lexicon
    exemplar_bank: list[Exemplar]
    mode: str = "rule"
    remote_config: RemoteConfig | None = None
    prompt_budget: int = 24_000

    @classmethod
    def from_seed_text(
        cls,
        seed_text: str,
        mode: str = "rule",
        remote_config: RemoteConfig | None = None,
    ) -> "Engine":
        if mode not in TRANSLATOR_MODES:
            raise ValueError(f"unknown translator mode {mode!r}")
        dataset = load_seed(seed_text)
        schema = schema_summary(dataset)
        return cls(
            dataset=dataset,
            graph=build_graph(dataset),
            schema=schema,
            lexicon=build_lexicon(schema, dataset),
            exemplar_bank=load_exemplar_bank(),
            mode=mode,
            remote_config=remote_config,
        )

    @classmethod
    def default(cls, mode: str = "rule", remote_config: RemoteConfig | None = None) -> "Engine":
        return cls.from_seed_text(default_seed_text(), mode=mode, remote_config=remote_config)

    def build_prompt_for(self, normalized: NormalizedQuery) -> PromptDocument:
        return build_prompt(
            self.schema,
            self.exemplar_bank,
            normalized,
            lexicon=self.lexicon,
            budget=self.prompt_budget,
        )


def answer(text: str, engine: Engine, mode: str | None = None) -> Answer:
    """Answer a natural-language question over the knowledge graph.

    All failures are reported through Answer.status; nothing raises for
    user-facing input problems.
    """
    started = time.perf_counter()
    mode = mode or engine.mode

    def finish(
        status: str,
        intent: IntentCategory,
        cypher: str | None = None,
        table: ResultTable | None = None,
        text_out: str = "",
    ) -> Answer:
        elapsed_ms = int((time.perf_counter() - started) * 1000)
        return Answer(
            status=status,
            intent=intent.value,
            cypher=cypher,
            columns=table.columns if table else (),
            rows=list(table.rows) if table else [],
            text=text_out,
            elapsed_ms=elapsed_ms,
            timing_note=f"{(time.perf_counter() - started) * 1000:.1f} ms via {mode} translator",
        )

    if mode not in TRANSLATOR_MODES:
        return finish(STATUS_ERROR, IntentCategory.UNSUPPORTED, text_out=f"Error: unknown translator mode {mode!r}")

    try:
        normalized = normalize(text, engine.lexicon)
    except EmptyQuery as exc:
        return finish(STATUS_ERROR, IntentCategory.UNSUPPORTED, text_out=f"Error: {exc}")

    intent = classify_intent(normalized)
    if intent is IntentCategory.UNSUPPORTED:
        return finish(STATUS_UNSUPPORTED, intent, text_out=REJECTION_SENTENCE)

    # translation candidates, tried in order through the guard
    candidates: list[str] = []
    if mode == "rule":
        candidates.append(translate_rule(normalized, intent, engine.schema))
    else:
        try:
            config = engine.remote_config or RemoteConfig.from_env()
            if config is None:
                raise TranslatorError("no remote endpoint configured (AMKG_LLM_BASE_URL)")
            prompt = engine.build_prompt_for(normalized)
            candidates.append(translate_remote(prompt, config))
        except (TranslatorError, BudgetImpossible) as exc:
            if mode != "fallback":
                return finish(STATUS_ERROR, intent, text_out=f"Error: {exc}")
        if mode == "fallback":
            candidates.append(translate_rule(normalized, intent, engine.schema))

    last_error: str | None = None
    for cypher in candidates:
        if cypher == UNSUPPORTED:
            return finish(STATUS_UNSUPPORTED, intent, text_out=REJECTION_SENTENCE)
        try:
            validated = guard(cypher, engine.schema)
        except CypherError as exc:
            last_error = f"rejected query: {exc}"
            continue
        table = execute(engine.graph, validated)
        rendered = format_response(intent, table, engine.schema)
        return finish(STATUS_ANSWERED, intent, render_ast(validated), table, rendered)

    return finish(STATUS_ERROR, intent, text_out=f"Error: {last_error or 'no translation produced'}")
