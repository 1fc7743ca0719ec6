"""Corpus regeneration evaluation: keywords out of sentences, sentences back.

For every corpus sentence the harness extracts the main words (content
words, plus the possessive/demonstrative determiners the engine treats as
input determiners), feeds them to the expansion pipeline, and classifies
the result as an exact match, a capitalisation-only match (proper-noun
substitutions), or a mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .lexicon import Category, Lexicon
from .prepmodel import CorpusFormatError, PrepModel, TaggedToken
from .realiser import expand

_KEPT = {
    Category.ADJECTIVE.value,
    Category.ADVERB.value,
    Category.NOUN.value,
    Category.PRONOUN.value,
    Category.PROPER_NOUN.value,
    Category.VERB.value,
}

# Surface-form categories: their features (number) live in the word itself,
# so lemmatising them would lose information the expander needs.
_SURFACE_POS = {
    Category.NOUN.value,
    Category.PRONOUN.value,
    Category.PROPER_NOUN.value,
}

POSSESSIVE_DETERMINERS = frozenset(
    {"my", "your", "his", "her", "its", "our", "their"}
)
DEMONSTRATIVE_DETERMINERS = frozenset({"this", "that", "these", "those"})

_NP_OPENERS = {Category.DETERMINER.value, Category.ADJECTIVE.value}
_NP_HEADS = _SURFACE_POS


def extract_keywords(sentence: Sequence[TaggedToken]) -> list[str]:
    """Main words of a tagged sentence, in expansion input order.

    Content words are kept (lemma, except nouns and pronouns which keep
    their surface form), possessive and demonstrative determiners survive
    as determiner inputs, and a trailing question mark becomes the "?"
    keyword.  Inverted questions are restored to subject-verb order.
    """
    kept: list[tuple[str, str]] = []
    question = False
    for token in sentence:
        if token.pos == "punct":
            if token.surface == "?":
                question = True
            continue
        if token.pos == Category.DETERMINER.value:
            surface = token.surface.lower()
            if (
                surface in POSSESSIVE_DETERMINERS
                or surface in DEMONSTRATIVE_DETERMINERS
            ):
                kept.append((surface, token.pos))
            continue
        if token.pos not in _KEPT:
            continue
        if token.pos in _SURFACE_POS:
            kept.append((token.surface.lower(), token.pos))
        else:
            kept.append((token.lemma, token.pos))
    if not kept:
        return []
    if question:
        kept = _restore_svo(kept)
    keywords = [word for word, _ in kept]
    if question:
        keywords.append("?")
    return keywords


def _restore_svo(kept: list[tuple[str, str]]) -> list[tuple[str, str]]:
    """Move a fronted verb after the subject noun block of a question."""
    verb_at = next(
        (i for i, (_, pos) in enumerate(kept) if pos == Category.VERB.value),
        None,
    )
    if verb_at is None:
        return kept
    if any(pos != Category.ADVERB.value for _, pos in kept[:verb_at]):
        return kept
    i = verb_at + 1
    while i < len(kept) and kept[i][1] in _NP_OPENERS:
        i += 1
    head_start = i
    while i < len(kept) and kept[i][1] in _NP_HEADS:
        i += 1
    if i == head_start:
        return kept
    verb = kept[verb_at]
    return kept[:verb_at] + kept[verb_at + 1 : i] + [verb] + kept[i:]


EXACT = "exact"
CAPITALIZATION = "capitalization"
MISMATCH = "mismatch"


@dataclass
class SentenceOutcome:
    target: str
    keywords: list[str]
    candidates: list[str]
    classification: str


@dataclass
class MatchReport:
    outcomes: list[SentenceOutcome] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.outcomes)

    def count(self, classification: str) -> int:
        return sum(1 for o in self.outcomes if o.classification == classification)

    @property
    def exact(self) -> int:
        return self.count(EXACT)

    @property
    def capitalization_only(self) -> int:
        return self.count(CAPITALIZATION)

    @property
    def mismatched(self) -> int:
        return self.count(MISMATCH)

    def to_dict(self) -> dict:
        total = self.total
        exact = self.exact
        cap = self.capitalization_only
        return {
            "total": total,
            "exact": exact,
            "capitalization_only": cap,
            "mismatch": self.mismatched,
            "exact_pct": round(100.0 * exact / total, 2) if total else 0.0,
            "success_pct": round(100.0 * (exact + cap) / total, 2) if total else 0.0,
            "sentences": [
                {
                    "target": o.target,
                    "keywords": o.keywords,
                    "candidates": o.candidates,
                    "classification": o.classification,
                }
                for o in self.outcomes
            ],
        }


def regenerate_and_match(
    corpus: Sequence[tuple[str, Sequence[TaggedToken]]],
    lex: Lexicon,
    model: PrepModel,
    top_k: int = 5,
) -> MatchReport:
    """Regenerate every corpus sentence from its main words and classify."""
    report = MatchReport()
    for target, sentence in corpus:
        keywords = extract_keywords(sentence)
        texts: list[str] = []
        if keywords:
            texts = [c.text for c in expand(keywords, lex, model, top_k=top_k).candidates]
        target_clean = target.strip()
        if target_clean in texts:
            classification = EXACT
        elif target_clean.lower() in (t.lower() for t in texts):
            classification = CAPITALIZATION
        else:
            classification = MISMATCH
        report.outcomes.append(
            SentenceOutcome(
                target=target_clean,
                keywords=keywords,
                candidates=texts,
                classification=classification,
            )
        )
    return report


def read_eval_corpus(text: str) -> list[tuple[str, list[TaggedToken]]]:
    """Read a tagged corpus whose blocks carry ``# target`` header lines."""
    corpus: list[tuple[str, list[TaggedToken]]] = []
    target: str | None = None
    current: list[TaggedToken] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#"):
            if current and target is not None:
                corpus.append((target, current))
                current = []
            target = line[1:].strip()
            continue
        if not line.strip():
            if current:
                if target is None:
                    raise CorpusFormatError(
                        f"line {lineno}: sentence block without a # target line"
                    )
                corpus.append((target, current))
                current = []
                target = None
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise CorpusFormatError(
                f"line {lineno}: expected 3 tab-separated fields"
            )
        current.append(TaggedToken(*parts))
    if current:
        if target is None:
            raise CorpusFormatError("final sentence block without a # target line")
        corpus.append((target, current))
    return corpus
