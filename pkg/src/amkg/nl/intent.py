"""Intent classification into the eight functional query categories.

Each category is scored from keyword groups and resolved entities; the
highest score wins, with ties broken by a fixed most-specific-first
precedence so compound questions never degrade to simple retrieval.
"""

from __future__ import annotations

from enum import Enum

from .normalize import NormalizedQuery


class IntentCategory(Enum):
    BASIC_RETRIEVAL = "BasicRetrieval"
    PRINTABILITY_ANALYSIS = "PrintabilityAnalysis"
    DFAM_GUIDANCE = "DfamGuidance"
    FEEDSTOCK_ENGINEERING = "FeedstockEngineering"
    POST_PROCESSING_ESTIMATION = "PostProcessingEstimation"
    CROSS_MATERIAL_COMPATIBILITY = "CrossMaterialCompatibility"
    CAPABILITY_FILTERING = "CapabilityFiltering"
    ANALYTICAL_QUERY = "AnalyticalQuery"
    UNSUPPORTED = "Unsupported"


# ties resolve to the earliest category in this list (most specific first)
TIE_PRECEDENCE = (
    IntentCategory.ANALYTICAL_QUERY,
    IntentCategory.CAPABILITY_FILTERING,
    IntentCategory.CROSS_MATERIAL_COMPATIBILITY,
    IntentCategory.POST_PROCESSING_ESTIMATION,
    IntentCategory.DFAM_GUIDANCE,
    IntentCategory.FEEDSTOCK_ENGINEERING,
    IntentCategory.PRINTABILITY_ANALYSIS,
    IntentCategory.BASIC_RETRIEVAL,
)

RETRIEVAL_VERBS = {"list", "show", "enumerate", "name", "what", "display"}

# two-word phrases that point at a node label; checked before single words
LABEL_PHRASES = {
    ("material", "families"): "MaterialFamily",
    ("material", "family"): "MaterialFamily",
    ("material", "categories"): "MaterialFamily",
    ("material", "states"): "MaterialState",
    ("material", "state"): "MaterialState",
    ("post-processing", "steps"): "PostProcess",
    ("post", "processing"): "PostProcess",
    ("fusion", "techniques"): "FusionTechnique",
}

# plural/singular nouns that point at a node label
LABEL_WORDS = {
    "process": "Process",
    "processes": "Process",
    "material": "Material",
    "materials": "Material",
    "alloy": "Material",
    "alloys": "Material",
    "metal": "Material",
    "metals": "Material",
    "feedstock": "Feedstock",
    "feedstocks": "Feedstock",
    "family": "MaterialFamily",
    "families": "MaterialFamily",
    "category": "MaterialFamily",
    "categories": "MaterialFamily",
    "post-processing": "PostProcess",
    "steps": "PostProcess",
    "techniques": "FusionTechnique",
    "states": "MaterialState",
}

PRINT_WORDS = {
    "print",
    "prints",
    "printed",
    "printable",
    "printability",
    "fabricate",
    "fabricated",
    "manufacture",
    "manufactured",
    "handle",
    "handles",
}

COMPAT_WORDS = {"compatible", "compatibility"}

DFAM_PHRASES = (
    ("build", "volume"),
    ("build", "envelope"),
    ("build", "dimensions"),
    ("build", "size"),
    ("build", "height"),
    ("feature", "resolution"),
    ("deposition", "rate"),
    ("design", "rules"),
)
DFAM_WORDS = {"resolution", "dfam", "constraints", "dimensions", "envelope", "rate"}

FEEDSTOCK_WORDS = {"feedstock", "feedstocks"}
USE_VERBS = {"use", "uses", "used", "using", "run", "runs", "need", "needs", "fed"}

POST_WORDS = {"post-processing", "post-process", "postprocessing", "treatment", "treatments"}
REQUIRE_VERBS = {"require", "requires", "required", "need", "needs", "needed"}

MULTI_FAMILY_WORDS = {"multiple", "several", "different", "across", "span", "spans"}
FAMILY_WORDS = {"families", "family"}

RECOMMEND_WORDS = {"recommend", "recommended", "suitable", "suit", "suits", "best"}

COUNT_PHRASE = ("how", "many")


def _has_phrase(tokens: tuple[str, ...], phrase: tuple[str, ...]) -> bool:
    n = len(phrase)
    return any(tokens[i : i + n] == phrase for i in range(len(tokens) - n + 1))


def score_categories(query: NormalizedQuery) -> dict[IntentCategory, int]:
    """Per-category keyword/entity scores (before tie-breaking)."""
    tokens = query.tokens
    words = set(tokens)

    materials = query.entities_with_label("Material")
    processes = query.entities_with_label("Process")
    families = query.entities_with_label("MaterialFamily")
    feedstocks = query.entities_with_label("Feedstock")
    post_steps = query.entities_with_label("PostProcess")
    has_constraint = bool(query.constraints)

    scores = {category: 0 for category in IntentCategory if category is not IntentCategory.UNSUPPORTED}

    # BasicRetrieval: a listing/counting verb plus an entity-class noun
    retrieval = 0
    if words & RETRIEVAL_VERBS or _has_phrase(tokens, COUNT_PHRASE) or "count" in words:
        retrieval += 1
    if any(word in LABEL_WORDS for word in words):
        retrieval += 1
    scores[IntentCategory.BASIC_RETRIEVAL] = retrieval

    # PrintabilityAnalysis: print/compatibility verbs tied to a concrete entity
    printing = 0
    named_entity = bool(materials or processes or families)
    if words & PRINT_WORDS:
        printing = 2 if named_entity else 1
    elif words & COMPAT_WORDS and named_entity:
        printing = 2
    scores[IntentCategory.PRINTABILITY_ANALYSIS] = printing

    # DfamGuidance: constraint projection for a named process, no threshold
    dfam = 0
    dfam_signal = any(_has_phrase(tokens, p) for p in DFAM_PHRASES) or (words & DFAM_WORDS)
    if dfam_signal:
        dfam = 2 if (processes and not has_constraint) else 1
    scores[IntentCategory.DFAM_GUIDANCE] = dfam

    # FeedstockEngineering: feedstock nouns in a relational context
    feed = 0
    feed_signal = bool(words & FEEDSTOCK_WORDS or feedstocks)
    if feed_signal:
        relational = bool(processes or words & USE_VERBS or "size" in words)
        feed = 2 if relational else 1
    scores[IntentCategory.FEEDSTOCK_ENGINEERING] = feed

    # PostProcessingEstimation: named steps, or post-processing vocabulary in
    # a relational context (an anchor entity or a requirement verb); a bare
    # "list the steps" question stays with retrieval
    post = 0
    relational = bool(materials or processes or families or words & REQUIRE_VERBS)
    if post_steps or (words & POST_WORDS and relational):
        post = 2
        if words & REQUIRE_VERBS:
            post += 1
    elif words & POST_WORDS:
        post = 1
    scores[IntentCategory.POST_PROCESSING_ESTIMATION] = post

    # CrossMaterialCompatibility: two families, or "multiple families" phrasing
    cross = 0
    if len({f.canonical for f in families}) >= 2:
        cross = 3
    elif words & MULTI_FAMILY_WORDS and words & FAMILY_WORDS:
        cross = 3
    scores[IntentCategory.CROSS_MATERIAL_COMPATIBILITY] = cross

    # CapabilityFiltering: numeric thresholds over process capabilities
    capability = 0
    if has_constraint:
        capability = 2
        if any(c.dimension for c in query.constraints):
            capability += 1
    scores[IntentCategory.CAPABILITY_FILTERING] = capability

    # AnalyticalQuery: printability anchored to a material/family plus thresholds
    analytical = 0
    if has_constraint and (materials or families):
        analytical = 3
        if words & RECOMMEND_WORDS:
            analytical += 1
    scores[IntentCategory.ANALYTICAL_QUERY] = analytical

    return scores


def classify_intent(query: NormalizedQuery) -> IntentCategory:
    """Exactly one category per query; Unsupported when out of scope or no
    category scores above zero."""
    if query.out_of_scope:
        return IntentCategory.UNSUPPORTED
    scores = score_categories(query)
    best = max(scores.values())
    if best <= 0:
        return IntentCategory.UNSUPPORTED
    for category in TIE_PRECEDENCE:
        if scores[category] == best:
            return category
    return IntentCategory.UNSUPPORTED
