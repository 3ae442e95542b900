"""Natural-language answering: normalization, intent, translation, formatting."""

from .engine import (
    STATUS_ANSWERED,
    STATUS_ERROR,
    STATUS_UNSUPPORTED,
    TRANSLATOR_MODES,
    Answer,
    Engine,
    answer,
)
from .guard import guard
from .intent import IntentCategory, classify_intent
from .lexicon import Lexicon, build_lexicon
from .normalize import EmptyQuery, NormalizedQuery, normalize
from .prompt import (
    BudgetImpossible,
    Exemplar,
    PromptBankError,
    PromptDocument,
    build_prompt,
    load_exemplar_bank,
)
from .remote import (
    MalformedReply,
    RemoteConfig,
    TranslatorError,
    TranslatorTimeout,
    TransportError,
    translate_remote,
)
from .respond import NO_RESULTS_SENTENCE, REJECTION_SENTENCE, format_response
from .rules import UNSUPPORTED, translate_rule

__all__ = [
    "Answer",
    "BudgetImpossible",
    "EmptyQuery",
    "Engine",
    "Exemplar",
    "IntentCategory",
    "Lexicon",
    "MalformedReply",
    "NO_RESULTS_SENTENCE",
    "NormalizedQuery",
    "PromptBankError",
    "PromptDocument",
    "REJECTION_SENTENCE",
    "RemoteConfig",
    "STATUS_ANSWERED",
    "STATUS_ERROR",
    "STATUS_UNSUPPORTED",
    "TRANSLATOR_MODES",
    "TranslatorError",
    "TranslatorTimeout",
    "TransportError",
    "UNSUPPORTED",
    "answer",
    "build_lexicon",
    "build_prompt",
    "classify_intent",
    "format_response",
    "guard",
    "load_exemplar_bank",
    "normalize",
    "translate_remote",
    "translate_rule",
]
