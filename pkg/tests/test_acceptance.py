"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Everything here runs offline: the only network activity is against
local stub servers started by the tests themselves.
"""

import json
import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from amkg.cypher import (
    LexError,
    ParseError,
    UnboundVariable,
    UnknownLabel,
    UnknownProperty,
    UnknownRelType,
    WriteClauseRejected,
    execute,
    parse,
    render_ast,
)
from amkg.domain import load_seed, validate_dataset
from amkg.nl import (
    Engine,
    RemoteConfig,
    answer,
    classify_intent,
    guard,
    normalize,
    translate_rule,
)
from amkg.nl.prompt import CATEGORY_ORDER, check_bank
from amkg.service import create_app

from golden_suite import FIG3_QUESTION, FIG4_QUESTION, FIG5_QUESTION, GOLDEN_SUITE
from llm_stub import StubLLM
from support import (
    ORACLE_SUITE,
    assert_rows_match,
    oracle_execute,
    random_graph,
    random_query_ast,
)

REJECTION = "Sorry, the current knowledge graph does not support this type of query."


def report(name: str, started: float) -> None:
    print(f"[ACCEPTANCE] {name}: PASS ({time.perf_counter() - started:.2f}s)")


def test_inventory_exactness(seed_text):
    """validate on the shipped seed: 53/7/9/4, zero violations, < 1 s."""
    started = time.perf_counter()
    report_obj = validate_dataset(load_seed(seed_text))
    assert report_obj.counts["materials"] == 53
    assert report_obj.counts["families"] == 7
    assert report_obj.counts["processes"] == 9
    assert report_obj.counts["feedstocks"] == 4
    assert report_obj.violations == ()
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"inventory validation took {elapsed:.2f}s"
    report("inventory-exactness", started)


def test_executor_oracle_equivalence():
    """200 random graphs x 20-query suite: row-multisets equal brute force."""
    started = time.perf_counter()
    queries = [parse(text) for text in ORACLE_SUITE]
    assert len(queries) == 20
    rng = random.Random(20250810)
    for _ in range(200):
        graph = random_graph(rng, max_nodes=30, max_edges=60)
        for query in queries:
            expected, ordered = oracle_execute(graph, query)
            assert_rows_match(execute(graph, query).rows, expected, ordered)
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"oracle equivalence took {elapsed:.1f}s"
    report("executor-oracle-equivalence", started)


def test_parser_round_trip():
    """Golden corpus + 1,000 fuzz queries round-trip; writes always rejected."""
    started = time.perf_counter()
    from pathlib import Path

    corpus = [
        line
        for line in (Path(__file__).parent / "data" / "cypher_corpus.txt")
        .read_text()
        .splitlines()
        if line.strip() and not line.startswith("#")
    ]
    for text in corpus:
        query = parse(text)
        assert parse(render_ast(query)) == query, text

    rng = random.Random(424242)
    for _ in range(1000):
        query = random_query_ast(rng)
        rendered = render_ast(query)
        assert parse(rendered) == query, rendered

    for keyword in ("CREATE", "MERGE", "SET", "DELETE", "REMOVE", "DROP"):
        for text in (
            f"{keyword} (n:Material)",
            f"MATCH (m:Material) {keyword} m RETURN m.name",
            f"match (m) return m.name {keyword.lower()}",
        ):
            with pytest.raises(WriteClauseRejected):
                parse(text)

    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"round-trip took {elapsed:.1f}s"
    report("parser-round-trip", started)


def test_eight_category_golden_suite(engine, dataset):
    """>= 3 questions per category through rule mode: rendering and rows."""
    started = time.perf_counter()
    per_category = Counter(case.category for case in GOLDEN_SUITE)
    assert len(per_category) == 8
    assert all(count >= 3 for count in per_category.values())
    assert sum(per_category.values()) >= 24

    mismatches = []
    for case in GOLDEN_SUITE:
        normalized = normalize(case.question, engine.lexicon)
        intent = classify_intent(normalized)
        cypher = translate_rule(normalized, intent, engine.schema)
        if intent.value != case.category:
            mismatches.append((case.question, "intent", intent.value))
            continue
        if render_ast(parse(cypher)) != render_ast(parse(case.cypher)):
            mismatches.append((case.question, "cypher", cypher))
            continue
        rows = execute(engine.graph, guard(cypher, engine.schema)).rows
        if Counter(rows) != Counter(case.oracle(dataset)):
            mismatches.append((case.question, "rows", rows))
    assert mismatches == []
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"golden suite took {elapsed:.1f}s"
    report("eight-category-golden-suite", started)


def test_fig3_scenario(engine, dataset):
    """Printability listing equals the seed-record scan exactly."""
    started = time.perf_counter()
    result = answer(FIG3_QUESTION, engine)
    assert result.status == "answered"
    expected = {
        r.material_name
        for r in dataset.printable_by
        if r.process_name == "Electron Beam Wire DED"
    }
    assert {row[0] for row in result.rows} == expected
    assert len(result.rows) == len(expected)
    report("fig3-printability-scenario", started)


def test_fig4_scenario(engine, dataset):
    """Nickel + powder removal + heat treatment returns exactly the matches."""
    started = time.perf_counter()
    result = answer(FIG4_QUESTION, engine)
    assert result.status == "answered"
    nickel = {m.name for m in dataset.materials if m.family == "Nickel"}
    nickel_processes = {
        r.process_name for r in dataset.printable_by if r.material_name in nickel
    }
    expected = {
        p.name
        for p in dataset.processes
        if p.name in nickel_processes
        and "Powder Removal" in p.post_processing_names
        and "Heat Treatment" in p.post_processing_names
    }
    assert {row[0] for row in result.rows} == expected
    assert len(result.rows) == len(expected)
    report("fig4-compound-filter-scenario", started)


def test_fig5_scenario(engine):
    """Mechanical-behavior question: unsupported, byte-equal rejection."""
    started = time.perf_counter()
    result = answer(FIG5_QUESTION, engine)
    assert result.status == "unsupported"
    assert result.text == REJECTION
    assert result.text.encode() == REJECTION.encode()
    assert result.cypher is None
    assert result.rows == []
    report("fig5-unsupported-scenario", started)


GUARD_SUITE = [
    ("CREATE (n:Material {name: 'Evilium'})", WriteClauseRejected),
    ("MATCH (m:Material) DELETE m", WriteClauseRejected),
    ("MATCH (m:Material) SET m.name = 'x' RETURN m.name", WriteClauseRejected),
    ("MERGE (m:Material {name: 'X'}) RETURN m.name", WriteClauseRejected),
    ("MATCH (m:Material) REMOVE m.name RETURN m.name", WriteClauseRejected),
    ("DROP CONSTRAINT anything", WriteClauseRejected),
    ("MATCH (m:Alloy) RETURN m.name", UnknownLabel),
    ("MATCH (u:User)-[:PRINTABLE_BY]->(p:Process) RETURN u.name", UnknownLabel),
    ("MATCH (m:Material)-[:MELTED_BY]->(p:Process) RETURN m.name", UnknownRelType),
    ("MATCH (m:Material)-[:OWNED_BY]->(p:Process) RETURN m.name", UnknownRelType),
    ("MATCH (m:Material) RETURN m.tensile_strength_mpa", UnknownProperty),
    ("MATCH (p:Process) WHERE p.hardness_hv > 300 RETURN p.name", UnknownProperty),
    ("MATCH (m:Material RETURN m.name", ParseError),
    ("MATCH (m:Material) RETURN q.name", UnboundVariable),
    ("MATCH (m:Material) RETURN 'oops", LexError),
]


def test_guard_suite(schema):
    """15 adversarial strings rejected pre-execution with the stated classes."""
    started = time.perf_counter()
    assert len(GUARD_SUITE) == 15
    for text, error in GUARD_SUITE:
        with pytest.raises(error):
            guard(text, schema)
    report("guard-suite", started)


def test_remote_translator_contract(engine):
    """Chat-completions wire format against a local stub, four behaviors."""
    started = time.perf_counter()

    def with_stub(stub, mode="remote", timeout_s=1.0):
        return Engine(
            dataset=engine.dataset,
            graph=engine.graph,
            schema=engine.schema,
            lexicon=engine.lexicon,
            exemplar_bank=engine.exemplar_bank,
            mode=mode,
            remote_config=RemoteConfig(base_url=stub.base_url, timeout_s=timeout_s),
        )

    # (a) outgoing system message: schema overview + >= 50 positive exemplars
    reply = (
        "MATCH (m:Material)-[:PRINTABLE_BY]->"
        "(p:Process {name: 'Electron Beam Wire DED'}) RETURN m.name"
    )
    with StubLLM(reply=reply) as stub:
        result = answer(FIG3_QUESTION, with_stub(stub))
        system = stub.requests[0]["body"]["messages"][0]["content"]
        assert "Labels and properties:" in system
        assert "Relationships:" in system
        negatives = system.count("Cypher: UNSUPPORTED")
        assert system.count("Question:") - negatives >= 50
        # (b) canned valid reply flows guard -> execute -> format
        assert result.status == "answered"
        assert result.rows
        assert result.text.startswith("- ")

    # (c) canned refusal produces the rejection path
    with StubLLM(reply="unsupported query") as stub:
        result = answer(FIG3_QUESTION, with_stub(stub))
        assert result.status == "unsupported"
        assert result.text == REJECTION

    # (d) timeout surfaces status error without fabricated content
    with StubLLM(delay_s=3.0) as stub:
        result = answer(FIG3_QUESTION, with_stub(stub, timeout_s=0.4))
        assert result.status == "error"
        assert result.rows == []
        assert result.cypher is None
        assert REJECTION != result.text

    report("remote-translator-contract", started)


def test_prompt_bank_validity(engine):
    """Every exemplar passes guard; bank sizes meet the floor."""
    started = time.perf_counter()
    grouped = check_bank(engine.exemplar_bank)
    for category in CATEGORY_ORDER:
        assert len(grouped[category]) >= 6, category
        for exemplar in grouped[category]:
            guard(exemplar.cypher, engine.schema)
    assert len(grouped["Unsupported"]) >= 4
    assert sum(len(grouped[c]) for c in CATEGORY_ORDER) >= 50
    report("prompt-bank-validity", started)


def test_service_conformance(engine):
    """Fig. 3-5 statuses over HTTP, oversize 400, 50-request burst identical."""
    started = time.perf_counter()
    with TestClient(create_app(engine=engine)) as client:
        fig3 = client.post("/api/query", json={"text": FIG3_QUESTION})
        fig4 = client.post("/api/query", json={"text": FIG4_QUESTION})
        fig5 = client.post("/api/query", json={"text": FIG5_QUESTION})
        assert (fig3.status_code, fig4.status_code, fig5.status_code) == (200, 200, 200)
        assert fig3.json()["status"] == "answered"
        assert fig4.json()["status"] == "answered"
        assert fig5.json()["status"] == "unsupported"
        assert fig5.json()["answer_text"] == REJECTION

        oversize = client.post("/api/query", json={"text": "y" * 2501})
        assert oversize.status_code == 400

        payload = {"text": FIG3_QUESTION, "session_id": "burst", "translator_mode": "rule"}
        with ThreadPoolExecutor(max_workers=16) as pool:
            responses = list(pool.map(lambda _: client.post("/api/query", json=payload), range(50)))
        assert all(r.status_code == 200 for r in responses)
        bodies = set()
        for r in responses:
            body = r.json()
            body.pop("elapsed_ms")  # wall-clock noise; all else must be identical
            bodies.add(json.dumps(body, sort_keys=True))
        assert len(bodies) == 1
    report("service-conformance", started)
