import pytest

from amkg.cypher import (
    LexError,
    ParseError,
    UnboundVariable,
    UnknownLabel,
    UnknownProperty,
    UnknownRelType,
    WriteClauseRejected,
)
from amkg.nl import guard

# adversarial inputs with the error class each must raise, pre-execution
ADVERSARIAL = [
    ("CREATE (n:Material {name: 'Evilium'})", WriteClauseRejected),
    ("MATCH (m:Material) DELETE m", WriteClauseRejected),
    ("MATCH (m:Material) SET m.name = 'x' RETURN m.name", WriteClauseRejected),
    ("MERGE (m:Material {name: 'X'}) RETURN m.name", WriteClauseRejected),
    ("MATCH (m:Material) REMOVE m.name RETURN m.name", WriteClauseRejected),
    ("DROP CONSTRAINT whatever", WriteClauseRejected),
    ("MATCH (m) DETACH DELETE m", WriteClauseRejected),
    ("MATCH (m:Alloy) RETURN m.name", UnknownLabel),
    ("MATCH (u:User) RETURN u.name", UnknownLabel),
    ("MATCH (m:Material)-[:MELTED_BY]->(p:Process) RETURN m.name", UnknownRelType),
    ("MATCH (m:Material) RETURN m.tensile_strength_mpa", UnknownProperty),
    ("MATCH (p:Process) WHERE p.hardness_hv > 300 RETURN p.name", UnknownProperty),
    ("MATCH (m:Material RETURN m.name", ParseError),
    ("MATCH (m:Material) RETURN q.name", UnboundVariable),
    ("MATCH (m:Material) RETURN 'oops", LexError),
]


@pytest.mark.parametrize("text,error", ADVERSARIAL, ids=[a[0][:40] for a in ADVERSARIAL])
def test_adversarial_rejected(text, error, schema):
    with pytest.raises(error):
        guard(text, schema)


def test_valid_query_passes(schema):
    query = guard(
        "MATCH (m:Material)-[:PRINTABLE_BY]->(p:Process {name: 'Laser PBF'}) RETURN m.name",
        schema,
    )
    assert query.patterns


def test_per_label_property_check(schema):
    # deposition rate exists on Process, not on Material
    with pytest.raises(UnknownProperty):
        guard("MATCH (m:Material) RETURN m.deposition_rate_cc_hr", schema)


def test_rejection_lists_all_symbols(schema):
    with pytest.raises(UnknownLabel) as err:
        guard("MATCH (a:Alloy), (b:Publication) RETURN a.name, b.name", schema)
    assert err.value.symbols == ["Alloy", "Publication"]
