"""Deterministic template translator: normalized question -> Cypher text.

Each intent category owns a query template; entity and threshold slots are
filled from the normalized query. Templates are built as ASTs and rendered
canonically, so the output always parses and validates. Returns the literal
token UNSUPPORTED when the intent is unsupported or a mandatory slot cannot
be filled.
"""

from __future__ import annotations

from ..cypher import ast
from ..cypher.ast import render_ast
from ..domain.records import SchemaDescriptor
from .intent import LABEL_PHRASES, LABEL_WORDS, IntentCategory
from .normalize import NormalizedQuery, NumericConstraint

UNSUPPORTED = "UNSUPPORTED"

# conventional pattern variable per label
VAR_FOR_LABEL = {
    "Material": "m",
    "MaterialFamily": "f",
    "Process": "p",
    "Feedstock": "fs",
    "PostProcess": "s",
    "FusionTechnique": "ft",
    "MaterialState": "st",
}

_CAPABILITY_ORDER = (
    "build_x_mm",
    "build_y_mm",
    "build_z_mm",
    "feature_resolution_mm",
    "deposition_rate_cc_hr",
)

_VOLUME_PHRASES = (
    ("build", "volume"),
    ("build", "dimensions"),
    ("build", "envelope"),
    ("build", "size"),
)

_SINGLE_DIMENSION_WORDS = {
    "height": "build_z_mm",
    "tall": "build_z_mm",
    "width": "build_x_mm",
    "wide": "build_x_mm",
    "depth": "build_y_mm",
    "length": "build_y_mm",
    "long": "build_y_mm",
    "resolution": "feature_resolution_mm",
    "rate": "deposition_rate_cc_hr",
    "deposit": "deposition_rate_cc_hr",
    "deposition": "deposition_rate_cc_hr",
}

_MATERIAL_SUBJECT_WORDS = {"material", "materials", "alloy", "alloys", "metal", "metals"}
_PROCESS_SUBJECT_WORDS = {"process", "processes"}


def _node(var: str | None = None, label: str | None = None, name: str | None = None) -> ast.NodePattern:
    props = (("name", name),) if name is not None else ()
    return ast.NodePattern(variable=var, label=label, properties=props)


def _out(rel_type: str) -> ast.RelPattern:
    return ast.RelPattern(rel_type=rel_type, direction=ast.OUT)


def _path(*parts) -> ast.Pattern:
    nodes = tuple(parts[0::2])
    rels = tuple(parts[1::2])
    return ast.Pattern(nodes=nodes, rels=rels)


def _returns(*exprs: ast.ValueExpr) -> tuple[ast.ReturnItem, ...]:
    return tuple(ast.ReturnItem(expr=e) for e in exprs)


def _prop(var: str, prop: str) -> ast.PropertyAccess:
    return ast.PropertyAccess(var, prop)


def _literal_number(value: float) -> ast.Literal:
    return ast.Literal(int(value) if float(value).is_integer() else value)


def _has_phrase(tokens: tuple[str, ...], phrase: tuple[str, ...]) -> bool:
    n = len(phrase)
    return any(tokens[i : i + n] == phrase for i in range(len(tokens) - n + 1))


def _constraint_predicate(constraints: tuple[NumericConstraint, ...]) -> ast.BoolExpr | None:
    """AND-chain of threshold comparisons; None when any slot is unfillable.

    Numbers without a comparison hint default to >= (capability reading).
    """
    if not constraints:
        return None
    terms: list[ast.BoolExpr] = []
    for constraint in constraints:
        if constraint.dimension is None:
            return None
        terms.append(
            ast.Comparison(
                _prop("p", constraint.dimension),
                constraint.comparison or ">=",
                _literal_number(constraint.value),
            )
        )
    predicate = terms[0]
    for term in terms[1:]:
        predicate = ast.And(predicate, term)
    return predicate


def _subject_is_material(query: NormalizedQuery) -> bool:
    for token in query.tokens:
        if token in _PROCESS_SUBJECT_WORDS:
            return False
        if token in _MATERIAL_SUBJECT_WORDS:
            return True
    return False


def _family_anchor(family_name: str) -> list[ast.Pattern]:
    return [
        _path(
            _node("m", "Material"),
            _out("BELONGS_TO"),
            _node("f", "MaterialFamily", family_name),
        ),
        _path(_node("m"), _out("PRINTABLE_BY"), _node("p", "Process")),
    ]


def _basic_retrieval(query: NormalizedQuery) -> ast.QueryAst | None:
    wants_count = "count" in query.tokens or _has_phrase(query.tokens, ("how", "many"))
    family = query.first_entity("MaterialFamily")
    if family is not None:
        pattern = _path(
            _node("m", "Material"),
            _out("BELONGS_TO"),
            _node("f", "MaterialFamily", family.canonical),
        )
        item = ast.Count(ast.Variable("m")) if wants_count else _prop("m", "name")
        return ast.QueryAst(patterns=(pattern,), returns=_returns(item))
    label = None
    tokens = query.tokens
    for i, token in enumerate(tokens):
        bigram = tokens[i : i + 2]
        if len(bigram) == 2 and bigram in LABEL_PHRASES:
            label = LABEL_PHRASES[bigram]
            break
        if token in LABEL_WORDS:
            label = LABEL_WORDS[token]
            break
    if label is None:
        return None
    var = VAR_FOR_LABEL[label]
    item = ast.Count(ast.Variable(var)) if wants_count else _prop(var, "name")
    return ast.QueryAst(patterns=(_path(_node(var, label)),), returns=_returns(item))


def _printability(query: NormalizedQuery) -> ast.QueryAst | None:
    material = query.first_entity("Material")
    process = query.first_entity("Process")
    family = query.first_entity("MaterialFamily")
    if material is not None:
        pattern = _path(
            _node("m", "Material", material.canonical),
            _out("PRINTABLE_BY"),
            _node("p", "Process", process.canonical if process else None),
        )
        item = _prop("m", "name") if process else _prop("p", "name")
        return ast.QueryAst(patterns=(pattern,), returns=_returns(item))
    if process is not None:
        pattern = _path(
            _node("m", "Material"),
            _out("PRINTABLE_BY"),
            _node("p", "Process", process.canonical),
        )
        return ast.QueryAst(patterns=(pattern,), returns=_returns(_prop("m", "name")))
    if family is not None:
        return ast.QueryAst(
            patterns=tuple(_family_anchor(family.canonical)),
            returns=_returns(_prop("p", "name")),
            distinct=True,
        )
    return None


def _dfam(query: NormalizedQuery) -> ast.QueryAst | None:
    process = query.first_entity("Process")
    if process is None:
        return None
    props: set[str] = set()
    if any(_has_phrase(query.tokens, phrase) for phrase in _VOLUME_PHRASES):
        props.update(("build_x_mm", "build_y_mm", "build_z_mm"))
    for token in query.tokens:
        if token in _SINGLE_DIMENSION_WORDS:
            props.add(_SINGLE_DIMENSION_WORDS[token])
    # "build height" should project only the height, not the whole envelope
    if _has_phrase(query.tokens, ("build", "height")):
        props.discard("build_x_mm")
        props.discard("build_y_mm")
        props.add("build_z_mm")
    if not props:
        props = {"build_x_mm", "build_y_mm", "build_z_mm", "feature_resolution_mm"}
    ordered = [p for p in _CAPABILITY_ORDER if p in props]
    return ast.QueryAst(
        patterns=(_path(_node("p", "Process", process.canonical)),),
        returns=_returns(*(_prop("p", prop) for prop in ordered)),
    )


def _feedstock(query: NormalizedQuery) -> ast.QueryAst | None:
    process = query.first_entity("Process")
    feedstock = query.first_entity("Feedstock")
    if process is not None:
        items = [_prop("fs", "name")]
        if "size" in query.tokens or "sizes" in query.tokens:
            items.append(_prop("fs", "size_note"))
        pattern = _path(
            _node("p", "Process", process.canonical),
            _out("USES_FEEDSTOCK"),
            _node("fs", "Feedstock"),
        )
        return ast.QueryAst(patterns=(pattern,), returns=_returns(*items))
    if feedstock is not None:
        pattern = _path(
            _node("p", "Process"),
            _out("USES_FEEDSTOCK"),
            _node("fs", "Feedstock", feedstock.canonical),
        )
        return ast.QueryAst(patterns=(pattern,), returns=_returns(_prop("p", "name")))
    pattern = _path(
        _node("p", "Process"), _out("USES_FEEDSTOCK"), _node("fs", "Feedstock")
    )
    return ast.QueryAst(
        patterns=(pattern,), returns=_returns(_prop("p", "name"), _prop("fs", "name"))
    )


def _post_processing(query: NormalizedQuery) -> ast.QueryAst | None:
    steps = [e.canonical for e in query.entities_with_label("PostProcess")]
    material = query.first_entity("Material")
    process = query.first_entity("Process")
    family = query.first_entity("MaterialFamily")

    if steps:
        patterns: list[ast.Pattern] = []
        p_introduced = False
        if family is not None:
            patterns.extend(_family_anchor(family.canonical))
            p_introduced = True
        elif material is not None:
            patterns.append(
                _path(
                    _node("m", "Material", material.canonical),
                    _out("PRINTABLE_BY"),
                    _node("p", "Process"),
                )
            )
            p_introduced = True
        for i, step in enumerate(dict.fromkeys(steps)):
            if not p_introduced and i == 0:
                left = _node("p", "Process", process.canonical if process else None)
            else:
                left = _node("p")
            patterns.append(
                _path(left, _out("REQUIRES_POST"), _node(None, "PostProcess", step))
            )
        return ast.QueryAst(
            patterns=tuple(patterns),
            returns=_returns(_prop("p", "name")),
            distinct=True,
        )

    if process is not None:
        pattern = _path(
            _node("p", "Process", process.canonical),
            _out("REQUIRES_POST"),
            _node("s", "PostProcess"),
        )
        return ast.QueryAst(patterns=(pattern,), returns=_returns(_prop("s", "name")))
    if material is not None:
        patterns = [
            _path(
                _node("m", "Material", material.canonical),
                _out("PRINTABLE_BY"),
                _node("p", "Process"),
            ),
            _path(_node("p"), _out("REQUIRES_POST"), _node("s", "PostProcess")),
        ]
        return ast.QueryAst(
            patterns=tuple(patterns), returns=_returns(_prop("s", "name")), distinct=True
        )
    if family is not None:
        patterns = _family_anchor(family.canonical)
        patterns.append(_path(_node("p"), _out("REQUIRES_POST"), _node("s", "PostProcess")))
        return ast.QueryAst(
            patterns=tuple(patterns), returns=_returns(_prop("s", "name")), distinct=True
        )
    return None


def _cross_material(query: NormalizedQuery) -> ast.QueryAst | None:
    family_names = list(dict.fromkeys(e.canonical for e in query.entities_with_label("MaterialFamily")))
    if len(family_names) >= 2:
        patterns = []
        for i, family in enumerate(family_names, start=1):
            m_var, f_var = f"m{i}", f"f{i}"
            patterns.append(
                _path(
                    _node(m_var, "Material"),
                    _out("BELONGS_TO"),
                    _node(f_var, "MaterialFamily", family),
                )
            )
            patterns.append(
                _path(
                    _node(m_var),
                    _out("PRINTABLE_BY"),
                    _node("p", "Process" if i == 1 else None),
                )
            )
        return ast.QueryAst(
            patterns=tuple(patterns), returns=_returns(_prop("p", "name")), distinct=True
        )
    # no named pair: any two distinct families sharing a process
    patterns = [
        _path(_node("m1", "Material"), _out("BELONGS_TO"), _node("f1", "MaterialFamily")),
        _path(_node("m1"), _out("PRINTABLE_BY"), _node("p", "Process")),
        _path(_node("m2", "Material"), _out("BELONGS_TO"), _node("f2", "MaterialFamily")),
        _path(_node("m2"), _out("PRINTABLE_BY"), _node("p")),
    ]
    where = ast.Comparison(_prop("f1", "name"), "<>", _prop("f2", "name"))
    return ast.QueryAst(
        patterns=tuple(patterns),
        returns=_returns(_prop("p", "name")),
        where=where,
        distinct=True,
    )


def _capability(query: NormalizedQuery) -> ast.QueryAst | None:
    predicate = _constraint_predicate(query.constraints)
    if predicate is None:
        return None
    return ast.QueryAst(
        patterns=(_path(_node("p", "Process")),),
        returns=_returns(_prop("p", "name")),
        where=predicate,
    )


def _analytical(query: NormalizedQuery) -> ast.QueryAst | None:
    predicate = _constraint_predicate(query.constraints)
    if predicate is None:
        return None
    material = query.first_entity("Material")
    family = query.first_entity("MaterialFamily")
    if material is not None:
        patterns = [
            _path(
                _node("m", "Material", material.canonical),
                _out("PRINTABLE_BY"),
                _node("p", "Process"),
            )
        ]
        item = _prop("p", "name")
    elif family is not None:
        patterns = _family_anchor(family.canonical)
        item = _prop("m", "name") if _subject_is_material(query) else _prop("p", "name")
    else:
        return None
    return ast.QueryAst(
        patterns=tuple(patterns), returns=_returns(item), where=predicate, distinct=True
    )


_TEMPLATES = {
    IntentCategory.BASIC_RETRIEVAL: _basic_retrieval,
    IntentCategory.PRINTABILITY_ANALYSIS: _printability,
    IntentCategory.DFAM_GUIDANCE: _dfam,
    IntentCategory.FEEDSTOCK_ENGINEERING: _feedstock,
    IntentCategory.POST_PROCESSING_ESTIMATION: _post_processing,
    IntentCategory.CROSS_MATERIAL_COMPATIBILITY: _cross_material,
    IntentCategory.CAPABILITY_FILTERING: _capability,
    IntentCategory.ANALYTICAL_QUERY: _analytical,
}


def translate_rule(
    query: NormalizedQuery, intent: IntentCategory, schema: SchemaDescriptor
) -> str:
    """One Cypher query from the intent's template, or UNSUPPORTED."""
    template = _TEMPLATES.get(intent)
    if template is None:
        return UNSUPPORTED
    built = template(query)
    if built is None:
        return UNSUPPORTED
    return render_ast(built)
