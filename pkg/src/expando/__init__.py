"""expando: hybrid rule/statistical English text expansion."""

from .grammar import SyntaxTree, builtin_rules, parse_candidates, split_subject_predicate
from .lexicon import (
    Category,
    LexEntry,
    Lexicon,
    SemanticTag,
    inflect,
    lookup,
    parse_lexicon,
    serialize_lexicon,
)
from .planner import SentencePlan, SentenceType, detect_type, fill_extras, insert_subject
from .prepmodel import PrepModel, TaggedToken, extend_lexicon, infer, train
from .realiser import (
    AgreementFeatures,
    Candidate,
    ExpandResult,
    derive_agreement,
    derive_tense,
    expand,
    realise,
)

__version__ = "0.1.0"

__all__ = [
    "AgreementFeatures",
    "Candidate",
    "Category",
    "ExpandResult",
    "LexEntry",
    "Lexicon",
    "PrepModel",
    "SemanticTag",
    "SentencePlan",
    "SentenceType",
    "SyntaxTree",
    "TaggedToken",
    "builtin_rules",
    "derive_agreement",
    "derive_tense",
    "detect_type",
    "expand",
    "extend_lexicon",
    "fill_extras",
    "infer",
    "inflect",
    "insert_subject",
    "lookup",
    "parse_candidates",
    "parse_lexicon",
    "realise",
    "serialize_lexicon",
    "split_subject_predicate",
    "train",
]
