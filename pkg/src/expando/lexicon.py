"""In-memory lexicon: data model, XML file format, indexed lookup, inflection.

A lexicon is a flat collection of entries keyed by (lemma, category).  Every
inflected form of every entry is reachable through a case-insensitive index,
so tokens can be resolved to entries without scanning.  Lexica are immutable
once built; operations that "modify" a lexicon return a new one.
"""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Iterable, Iterator, Mapping
from xml.sax.saxutils import escape

log = logging.getLogger(__name__)


class LexiconError(Exception):
    """Base class for lexicon failures."""


class LexiconParseError(LexiconError):
    """Malformed XML input; carries the 1-based source line when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SchemaError(LexiconError):
    """Structurally valid XML that violates the lexicon schema."""


class DuplicateEntryError(LexiconError):
    """Two entries share the same (lemma, category) key."""


class MissingFormError(LexiconError):
    """An inflected form was requested that the entry does not store."""


class Category(str, Enum):
    NOUN = "noun"
    PRONOUN = "pronoun"
    VERB = "verb"
    ADJECTIVE = "adjective"
    ADVERB = "adverb"
    CONJUNCTION = "conjunction"
    DETERMINER = "determiner"
    PREPOSITION = "preposition"
    # Runtime fallback for unknown words; never stored in a lexicon file.
    PROPER_NOUN = "proper_noun"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


class SemanticTag(str, Enum):
    LIVING = "living"
    FOODSTUFF = "foodstuff"
    PLACE = "place"
    OBJECT = "object"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


SINGULAR = "singular"
PLURAL = "plural"
PRESENT = "present"
PAST = "past"
FUTURE = "future"

GENDERS = ("masculine", "feminine", "neuter")
NUMBERS = (SINGULAR, PLURAL)
TENSES = (PRESENT, PAST, FUTURE)

# Fields each category may populate, beyond lemma/category/sources.
_CATEGORY_FIELDS: dict[Category, frozenset[str]] = {
    Category.NOUN: frozenset({"number", "plural_form", "semantic_tag"}),
    Category.VERB: frozenset(
        {
            "present3s",
            "past",
            "present_participle",
            "past_participle",
            "present1s",
            "present2s",
            "present_plural",
            "past2s",
            "past_plural",
            "preps",
        }
    ),
    Category.PRONOUN: frozenset({"person", "number", "gender"}),
    Category.ADVERB: frozenset({"tense_hint"}),
    Category.DETERMINER: frozenset({"number", "plural_form"}),
    Category.ADJECTIVE: frozenset(),
    Category.CONJUNCTION: frozenset(),
    Category.PREPOSITION: frozenset(),
    Category.PROPER_NOUN: frozenset(),
}


@dataclass(frozen=True)
class LexEntry:
    """One lemma in one lexical category with its stored inflections.

    Only fields that belong to ``category`` may be populated.  ``preps`` holds
    the verb's learned preposition per semantic tag as a sorted tuple so the
    entry stays hashable; use :attr:`prep_map` for a dict view.
    """

    lemma: str
    category: Category
    # noun / determiner
    number: str | None = None
    plural_form: str | None = None
    semantic_tag: SemanticTag | None = None
    # verb: the four stored forms plus irregular agreement overrides ('be')
    present3s: str | None = None
    past: str | None = None
    present_participle: str | None = None
    past_participle: str | None = None
    present1s: str | None = None
    present2s: str | None = None
    present_plural: str | None = None
    past2s: str | None = None
    past_plural: str | None = None
    preps: tuple[tuple[SemanticTag, str], ...] = ()
    # pronoun
    person: int | None = None
    gender: str | None = None
    # adverb
    tense_hint: str | None = None
    sources: frozenset[str] = frozenset()

    def __post_init__(self):
        if not self.lemma:
            raise SchemaError("entry with empty lemma")
        if self.lemma != self.lemma.lower():
            raise SchemaError(f"lemma {self.lemma!r} is not lowercase")
        allowed = _CATEGORY_FIELDS[self.category]
        for f in fields(self):
            if f.name in ("lemma", "category", "sources") or f.name in allowed:
                continue
            value = getattr(self, f.name)
            if value not in (None, ()):
                raise SchemaError(
                    f"{self.lemma}/{self.category.value}: field {f.name!r} "
                    f"not applicable to category {self.category.value!r}"
                )
        if self.number is not None and self.number not in NUMBERS:
            raise SchemaError(f"{self.lemma}: bad number {self.number!r}")
        if self.gender is not None and self.gender not in GENDERS:
            raise SchemaError(f"{self.lemma}: bad gender {self.gender!r}")
        if self.person is not None and self.person not in (1, 2, 3):
            raise SchemaError(f"{self.lemma}: bad person {self.person!r}")
        if self.tense_hint is not None and self.tense_hint not in TENSES:
            raise SchemaError(f"{self.lemma}: bad tense {self.tense_hint!r}")
        object.__setattr__(self, "preps", tuple(sorted(self.preps)))
        object.__setattr__(self, "sources", frozenset(self.sources))

    @property
    def prep_map(self) -> dict[SemanticTag, str]:
        return dict(self.preps)

    def with_preps(self, prep_map: Mapping[SemanticTag, str]) -> "LexEntry":
        return replace(self, preps=tuple(sorted(prep_map.items())))

    @property
    def key(self) -> tuple[str, str]:
        return (self.lemma, self.category.value)


def _verb_form_cells(entry: LexEntry) -> list[tuple[str | None, dict]]:
    """(form, implied features) pairs for a verb, most specific first."""
    return [
        (entry.present3s, {"tense": PRESENT, "person": 3, "number": SINGULAR}),
        (entry.present1s, {"tense": PRESENT, "person": 1, "number": SINGULAR}),
        (entry.present2s, {"tense": PRESENT, "person": 2, "number": SINGULAR}),
        (entry.present_plural, {"tense": PRESENT, "number": PLURAL}),
        (entry.past, {"tense": PAST}),
        (entry.past2s, {"tense": PAST, "person": 2, "number": SINGULAR}),
        (entry.past_plural, {"tense": PAST, "number": PLURAL}),
        (entry.present_participle, {"tense": PRESENT}),
        (entry.past_participle, {"tense": PAST}),
    ]


def _entry_forms(entry: LexEntry) -> Iterator[tuple[str, dict]]:
    """Every surface form the entry can realise, with its implied features."""
    cat = entry.category
    if cat == Category.NOUN or cat == Category.DETERMINER:
        yield entry.lemma, {"number": entry.number or SINGULAR}
        if entry.plural_form:
            yield entry.plural_form, {"number": PLURAL}
    elif cat == Category.VERB:
        yield entry.lemma, {}
        for form, feats in _verb_form_cells(entry):
            if form:
                yield form, feats
    elif cat == Category.PRONOUN:
        feats = {}
        if entry.person:
            feats["person"] = entry.person
        feats["number"] = entry.number or SINGULAR
        if entry.gender:
            feats["gender"] = entry.gender
        yield entry.lemma, feats
    else:
        yield entry.lemma, {}


class Lexicon:
    """Immutable, indexed collection of :class:`LexEntry`."""

    def __init__(self, entries: Iterable[LexEntry]):
        ordered = sorted(entries, key=lambda e: (e.lemma, e.category.value))
        by_key: dict[tuple[str, str], LexEntry] = {}
        for entry in ordered:
            if entry.key in by_key:
                raise DuplicateEntryError(
                    f"duplicate entry {entry.lemma!r}/{entry.category.value}"
                )
            by_key[entry.key] = entry
        self._entries: tuple[LexEntry, ...] = tuple(ordered)
        self._by_key = by_key
        for entry in ordered:
            for tag, prep in entry.preps:
                # expected to name a preposition entry in a complete lexicon;
                # partial documents (single-entry files) only get a warning
                if (prep, Category.PREPOSITION.value) not in by_key:
                    log.warning(
                        "%s: preposition %r for tag %r has no preposition entry",
                        entry.lemma,
                        prep,
                        tag.value,
                    )
        index: dict[str, list[tuple[LexEntry, dict]]] = {}
        for entry in ordered:
            seen: set[str] = set()
            for form, feats in _entry_forms(entry):
                form = form.lower()
                if form in seen:
                    continue  # first cell wins for ambiguous stored forms
                seen.add(form)
                index.setdefault(form, []).append((entry, feats))
        self._index = index
        self._max_lemma_words = max(
            (len(e.lemma.split()) for e in ordered), default=1
        )

    @property
    def entries(self) -> tuple[LexEntry, ...]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[LexEntry]:
        return iter(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lexicon) and self._entries == other._entries

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Lexicon({len(self._entries)} entries)"

    def entry(self, lemma: str, category: Category) -> LexEntry | None:
        return self._by_key.get((lemma.lower(), category.value))

    def lemmas(self, category: Category) -> list[str]:
        return [e.lemma for e in self._entries if e.category == category]

    @property
    def max_lemma_words(self) -> int:
        return self._max_lemma_words

    def lookup(self, token: str) -> list[tuple[LexEntry, dict]]:
        """All entries that realise ``token``, with the matched features.

        Matching is case-insensitive over lemmas and stored inflected forms.
        An empty result means the word is unknown and should be treated as a
        proper noun by the caller.
        """
        if not token:
            return []
        hits = self._index.get(token.lower(), [])
        return [(entry, dict(feats)) for entry, feats in hits]


def lookup(lex: Lexicon, token: str) -> list[tuple[LexEntry, dict]]:
    return lex.lookup(token)


def inflect(entry: LexEntry, features: Mapping) -> str:
    """Realise ``entry`` under the given person/number/tense features.

    Only stored forms are returned, except the periphrastic future which
    prefixes "will" to the bare lemma.  Raises :class:`MissingFormError`
    when the entry does not store the requested form.
    """
    cat = entry.category
    if cat == Category.NOUN:
        number = features.get("number") or entry.number or SINGULAR
        if number == PLURAL:
            if entry.number == PLURAL:
                return entry.lemma  # plural-only noun: the lemma is the form
            if entry.plural_form is None:
                raise MissingFormError(f"{entry.lemma}: no plural form")
            return entry.plural_form
        return entry.lemma
    if cat == Category.DETERMINER:
        # Most determiners are invariable; absence of a plural form means
        # the lemma serves both numbers ("the", "my").
        if features.get("number") == PLURAL and entry.plural_form:
            return entry.plural_form
        return entry.lemma
    if cat == Category.VERB:
        tense = features.get("tense") or PRESENT
        person = int(features.get("person") or 3)
        number = features.get("number") or SINGULAR
        if tense == FUTURE:
            return "will " + entry.lemma
        if tense == PAST:
            if number == PLURAL and entry.past_plural:
                return entry.past_plural
            if person == 2 and number == SINGULAR and entry.past2s:
                return entry.past2s
            if entry.past is None:
                raise MissingFormError(f"{entry.lemma}: no past form")
            return entry.past
        if person == 3 and number == SINGULAR:
            if entry.present3s is None:
                raise MissingFormError(f"{entry.lemma}: no present3s form")
            return entry.present3s
        if number == PLURAL and entry.present_plural:
            return entry.present_plural
        if person == 1 and number == SINGULAR and entry.present1s:
            return entry.present1s
        if person == 2 and number == SINGULAR and entry.present2s:
            return entry.present2s
        return entry.lemma
    return entry.lemma


# ---------------------------------------------------------------------------
# XML file format
# ---------------------------------------------------------------------------

XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8" standalone="no"?>'

# element name <-> LexEntry field, in serialization order per category
_PREP_ELEMENTS = ("object", "foodstuff", "living", "place")

_ELEMENT_ORDER: dict[Category, tuple[str, ...]] = {
    Category.NOUN: ("number", "plural", "semantic_tag"),
    Category.VERB: (
        "present3s",
        "past",
        "present_participle",
        "past_participle",
        "present1s",
        "present2s",
        "present_plural",
        "past2s",
        "past_plural",
    )
    + _PREP_ELEMENTS,
    Category.PRONOUN: ("person", "number", "gender"),
    Category.ADVERB: ("tense",),
    Category.DETERMINER: ("number", "plural"),
    Category.ADJECTIVE: (),
    Category.CONJUNCTION: (),
    Category.PREPOSITION: (),
}

_ELEMENT_FIELD = {"plural": "plural_form", "tense": "tense_hint"}


def parse_lexicon(xml_text: str) -> Lexicon:
    """Parse a lexicon XML document into a :class:`Lexicon`.

    Element text is whitespace-trimmed, so pretty-printed files round-trip.
    """
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise LexiconParseError(str(exc), line=line) from exc
    if root.tag != "lexicon":
        raise LexiconParseError(f"root element is {root.tag!r}, not 'lexicon'")
    entries = []
    for word in root:
        if word.tag != "word":
            raise SchemaError(f"unexpected element {word.tag!r} under lexicon")
        entries.append(_parse_word(word))
    return Lexicon(entries)


def _text(elem: ET.Element) -> str:
    return (elem.text or "").strip()


def _parse_word(word: ET.Element) -> LexEntry:
    raw: dict[str, str] = {}
    order: list[str] = []
    for child in word:
        if child.tag in raw:
            raise SchemaError(f"repeated element {child.tag!r} in word entry")
        raw[child.tag] = _text(child)
        order.append(child.tag)
    lemma = raw.pop("lemma", "")
    if not lemma:
        raise SchemaError("word entry without a lemma")
    lemma = lemma.lower()
    cat_text = raw.pop("category", "")
    try:
        category = Category(cat_text)
    except ValueError:
        raise SchemaError(f"{lemma}: unknown category {cat_text!r}") from None
    if category == Category.PROPER_NOUN:
        raise SchemaError(f"{lemma}: proper_noun entries cannot be stored")
    sources = raw.pop("source", "")
    allowed = set(_ELEMENT_ORDER[category])
    kwargs: dict = {}
    preps: dict[SemanticTag, str] = {}
    for tag_name, value in raw.items():
        if tag_name not in allowed:
            raise SchemaError(
                f"{lemma}: element {tag_name!r} not allowed for "
                f"category {category.value!r}"
            )
        if tag_name in _PREP_ELEMENTS:
            preps[SemanticTag(tag_name)] = value
        elif tag_name == "semantic_tag":
            try:
                kwargs["semantic_tag"] = SemanticTag(value)
            except ValueError:
                raise SchemaError(
                    f"{lemma}: unknown semantic tag {value!r}"
                ) from None
        elif tag_name == "person":
            if value not in ("1", "2", "3"):
                raise SchemaError(f"{lemma}: bad person {value!r}")
            kwargs["person"] = int(value)
        else:
            kwargs[_ELEMENT_FIELD.get(tag_name, tag_name)] = value
    if preps:
        kwargs["preps"] = tuple(sorted(preps.items()))
    if sources:
        kwargs["sources"] = frozenset(sources.split(","))
    return LexEntry(lemma=lemma, category=category, **kwargs)


def serialize_lexicon(lex: Lexicon) -> str:
    """Serialize a lexicon; ``parse_lexicon`` of the result equals ``lex``."""
    if not lex.entries:
        return XML_DECLARATION + "\n<lexicon></lexicon>\n"
    out = [XML_DECLARATION, "<lexicon>"]
    for entry in lex.entries:
        out.append(" <word>")
        out.append(f"  <lemma>{escape(entry.lemma)}</lemma>")
        out.append(f"  <category>{entry.category.value}</category>")
        prep_map = entry.prep_map
        for elem in _ELEMENT_ORDER[entry.category]:
            if elem in _PREP_ELEMENTS:
                value = prep_map.get(SemanticTag(elem))
            else:
                attr = getattr(entry, _ELEMENT_FIELD.get(elem, elem))
                value = None if attr is None else str(attr)
            if value is not None:
                out.append(f"  <{elem}>{escape(value)}</{elem}>")
        if entry.sources:
            joined = ",".join(sorted(entry.sources))
            out.append(f"  <source>{escape(joined)}</source>")
        out.append(" </word>")
    out.append("</lexicon>")
    return "\n".join(out) + "\n"
