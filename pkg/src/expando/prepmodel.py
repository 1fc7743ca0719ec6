"""Statistical preposition inference trained from a POS-tagged corpus.

The model counts, for every verb occurrence, which preposition (or none)
links it to the next noun, keyed by the noun's semantic tag from the
lexicon.  Probabilities are plain conditional frequencies per
(verb lemma, semantic tag); the absent preposition is written as ``EMPTY``
in the model file and represented as ``None`` in code.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .lexicon import Category, Lexicon, SemanticTag

log = logging.getLogger(__name__)

PUNCT = "punct"
EMPTY_LABEL = "EMPTY"

_POS_VALUES = {c.value for c in Category} | {PUNCT}


class CorpusFormatError(Exception):
    """A tagged-corpus file line could not be interpreted."""


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    lemma: str
    pos: str  # a Category value or "punct"

    def __post_init__(self):
        if self.pos not in _POS_VALUES:
            raise CorpusFormatError(
                f"unknown pos {self.pos!r} for token {self.surface!r}"
            )
        object.__setattr__(self, "lemma", self.lemma.lower())


Sentence = Sequence[TaggedToken]


def read_tagged_corpus(text: str) -> list[list[TaggedToken]]:
    """Read `surface<TAB>lemma<TAB>pos` lines; blank line ends a sentence.

    Lines starting with ``#`` are ignored (the evaluation corpus uses them
    to carry target sentences).
    """
    sentences: list[list[TaggedToken]] = []
    current: list[TaggedToken] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#"):
            continue
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise CorpusFormatError(
                f"line {lineno}: expected 3 tab-separated fields, "
                f"got {len(parts)}"
            )
        try:
            current.append(TaggedToken(*parts))
        except CorpusFormatError as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from None
    if current:
        sentences.append(current)
    return sentences


class PrepModel:
    """Counts and conditional probabilities over (verb, prep, tag)."""

    def __init__(
        self,
        counts: Mapping[tuple[str, SemanticTag], Mapping[str | None, int]] | None = None,
    ):
        self._counts: dict[tuple[str, SemanticTag], Counter] = {}
        if counts:
            for key, dist in counts.items():
                self._counts[key] = Counter(dist)

    def add(self, verb: str, prep: str | None, tag: SemanticTag, n: int = 1):
        self._counts.setdefault((verb, tag), Counter())[prep] += n

    def count(self, verb: str, prep: str | None, tag: SemanticTag) -> int:
        return self._counts.get((verb, tag), Counter())[prep]

    @property
    def pairs(self) -> list[tuple[str, SemanticTag]]:
        return sorted(self._counts, key=lambda k: (k[0], k[1].value))

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrepModel) and self._counts == other._counts

    def distribution(self, verb: str, tag: SemanticTag) -> dict[str | None, float]:
        """Probabilities for one (verb, tag) pair; empty dict when unseen."""
        dist = self._counts.get((verb, tag))
        if not dist:
            return {}
        total = sum(dist.values())
        return {prep: c / total for prep, c in dist.items() if c}

    def infer(self, verb: str, tag: SemanticTag | None) -> list[tuple[str | None, float]]:
        """Ranked prepositions for a verb and object tag.

        Sorted by descending probability; ties break lexicographically with
        the empty preposition last.  Unknown pairs (including an untagged
        noun, ``tag=None``) fall back to ``[(None, 1.0)]``.
        """
        if tag is None:
            return [(None, 1.0)]
        dist = self.distribution(verb, tag)
        if not dist:
            return [(None, 1.0)]
        return sorted(
            dist.items(), key=lambda kv: (-kv[1], kv[0] is None, kv[0] or "")
        )

    def dumps(self) -> str:
        lines = []
        for (verb, tag), dist in sorted(
            self._counts.items(), key=lambda kv: (kv[0][0], kv[0][1].value)
        ):
            for prep, count in sorted(
                dist.items(), key=lambda kv: (kv[0] is None, kv[0] or "")
            ):
                if count:
                    label = EMPTY_LABEL if prep is None else prep
                    lines.append(f"{verb}\t{tag.value}\t{label}\t{count}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def loads(cls, text: str) -> "PrepModel":
        model = cls()
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise CorpusFormatError(
                    f"line {lineno}: expected verb/tag/prep/count"
                )
            verb, tag, prep, count = parts
            try:
                semtag = SemanticTag(tag)
                n = int(count)
            except ValueError as exc:
                raise CorpusFormatError(f"line {lineno}: {exc}") from None
            if n < 0:
                raise CorpusFormatError(f"line {lineno}: negative count")
            model.add(verb, None if prep == EMPTY_LABEL else prep, semtag, n)
        return model


def _noun_tag(lex: Lexicon, lemma: str) -> SemanticTag | None:
    entry = lex.entry(lemma, Category.NOUN)
    return entry.semantic_tag if entry else None


def train(corpus: Iterable[Sentence], lex: Lexicon) -> PrepModel:
    """Count verb-centred preposition trigrams over a tagged corpus.

    After each verb the scan accepts ``prep (det) noun`` or ``(det) noun``;
    anything else contributes nothing.  Nouns whose lemma has no semantic
    tag in the lexicon are skipped.
    """
    model = PrepModel()
    for sentence in corpus:
        for i, token in enumerate(sentence):
            if token.pos != Category.VERB.value:
                continue
            j = i + 1
            prep = None
            if j < len(sentence) and sentence[j].pos == Category.PREPOSITION.value:
                prep = sentence[j].lemma
                j += 1
            if j < len(sentence) and sentence[j].pos == Category.DETERMINER.value:
                j += 1
            if j < len(sentence) and sentence[j].pos == Category.NOUN.value:
                tag = _noun_tag(lex, sentence[j].lemma)
                if tag is not None:
                    model.add(token.lemma, prep, tag)
    return model


def infer(
    model: PrepModel, verb: str, tag: SemanticTag | None
) -> list[tuple[str | None, float]]:
    return model.infer(verb, tag)


def extend_lexicon(lex: Lexicon, model: PrepModel) -> Lexicon:
    """Write the argmax preposition per semantic tag onto each verb entry.

    Tags unseen for a verb are left untouched; an EMPTY argmax clears the
    tag.  Learned prepositions missing from the lexicon are skipped so the
    lexicon's preposition invariant holds.
    """
    from .lexicon import Lexicon as _Lexicon  # avoid shadowing confusion

    new_entries = []
    changed = False
    for entry in lex.entries:
        if entry.category != Category.VERB:
            new_entries.append(entry)
            continue
        prep_map = entry.prep_map
        for tag in SemanticTag:
            dist = model.distribution(entry.lemma, tag)
            if not dist:
                continue
            best = model.infer(entry.lemma, tag)[0][0]
            if best is None:
                prep_map.pop(tag, None)
            elif lex.entry(best, Category.PREPOSITION) is None:
                log.warning(
                    "skipping learned preposition %r for %s/%s: "
                    "not in lexicon",
                    best,
                    entry.lemma,
                    tag.value,
                )
            else:
                prep_map[tag] = best
        updated = entry.with_preps(prep_map)
        if updated != entry:
            changed = True
        new_entries.append(updated)
    if not changed:
        return lex
    return _Lexicon(new_entries)
