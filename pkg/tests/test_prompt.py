import pytest

from amkg.nl import (
    BudgetImpossible,
    Exemplar,
    PromptBankError,
    build_prompt,
    guard,
    normalize,
)
from amkg.nl.prompt import CATEGORY_ORDER, check_bank


@pytest.fixture(scope="module")
def normalized(engine):
    return normalize("Which alloys can be printed by Electron Beam Wire DED?", engine.lexicon)


class TestBank:
    def test_shipped_bank_sizes(self, engine):
        grouped = check_bank(engine.exemplar_bank)
        for category in CATEGORY_ORDER:
            assert len(grouped[category]) >= 6, category
        assert len(grouped["Unsupported"]) >= 4
        positives = sum(len(grouped[c]) for c in CATEGORY_ORDER)
        assert positives >= 50

    def test_every_positive_passes_guard(self, engine):
        for exemplar in engine.exemplar_bank:
            if exemplar.category != "Unsupported":
                guard(exemplar.cypher, engine.schema)

    def test_bank_too_small_rejected(self, engine):
        small = [e for e in engine.exemplar_bank if e.category != "BasicRetrieval"]
        small += [e for e in engine.exemplar_bank if e.category == "BasicRetrieval"][:5]
        with pytest.raises(PromptBankError):
            check_bank(small)

    def test_negative_must_map_to_token(self):
        bad = [Exemplar("Unsupported", "q?", "MATCH (m:Material) RETURN m.name")]
        with pytest.raises(PromptBankError):
            check_bank(bad)

    def test_invalid_exemplar_rejected_at_build(self, engine, normalized):
        bank = list(engine.exemplar_bank) + [
            Exemplar("BasicRetrieval", "bad", "MATCH (m:Martian) RETURN m.name")
        ]
        with pytest.raises(Exception):
            build_prompt(engine.schema, bank, normalized, lexicon=engine.lexicon)


class TestAssembly:
    def test_full_bank_keeps_fifty_positives(self, engine, normalized):
        doc = build_prompt(engine.schema, engine.exemplar_bank, normalized, lexicon=engine.lexicon)
        assert doc.positive_count >= 50
        assert doc.negative_count >= 4
        assert doc.total_length <= doc.budget
        assert doc.exemplar_text.count("Question:") == doc.positive_count + doc.negative_count

    def test_sections_present(self, engine, normalized):
        doc = build_prompt(engine.schema, engine.exemplar_bank, normalized, lexicon=engine.lexicon)
        assert "Labels and properties:" in doc.system_text
        assert "unsupported query" in doc.system_text
        assert "Synonyms:" in doc.system_text
        assert "UNSUPPORTED" in doc.exemplar_text
        assert normalized.rendered() in doc.user_text
        assert "# original:" in doc.user_text

    def test_deterministic(self, engine, normalized):
        first = build_prompt(engine.schema, engine.exemplar_bank, normalized, lexicon=engine.lexicon)
        second = build_prompt(engine.schema, engine.exemplar_bank, normalized, lexicon=engine.lexicon)
        assert first == second

    def test_round_robin_trimming(self, engine, normalized):
        generous = build_prompt(engine.schema, engine.exemplar_bank, normalized, lexicon=engine.lexicon)
        tight_budget = generous.total_length - 400
        doc = build_prompt(
            engine.schema,
            engine.exemplar_bank,
            normalized,
            lexicon=engine.lexicon,
            budget=tight_budget,
        )
        assert doc.total_length <= tight_budget
        assert doc.positive_count < generous.positive_count
        grouped = {}
        for line in doc.exemplar_text.splitlines():
            if line.startswith("Question:"):
                grouped[line] = grouped.get(line, 0) + 1
        # negatives survive trimming
        assert doc.negative_count == generous.negative_count

    def test_never_below_three_per_category(self, engine, normalized):
        # find the tightest feasible budget by probing down
        budget = 16_000
        last = None
        while budget > 0:
            try:
                last = build_prompt(
                    engine.schema,
                    engine.exemplar_bank,
                    normalized,
                    lexicon=engine.lexicon,
                    budget=budget,
                )
            except BudgetImpossible:
                break
            budget -= 1_000
        assert last is not None
        assert last.positive_count >= 3 * len(CATEGORY_ORDER)

    def test_budget_impossible(self, engine, normalized):
        with pytest.raises(BudgetImpossible):
            build_prompt(
                engine.schema,
                engine.exemplar_bank,
                normalized,
                lexicon=engine.lexicon,
                budget=100,
            )

    def test_messages_shape(self, engine, normalized):
        doc = build_prompt(engine.schema, engine.exemplar_bank, normalized, lexicon=engine.lexicon)
        messages = doc.messages()
        assert [m["role"] for m in messages] == ["system", "user"]
        assert doc.exemplar_text in messages[0]["content"]
        assert doc.system_text in messages[0]["content"]
        assert messages[1]["content"] == doc.user_text
