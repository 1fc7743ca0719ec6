"""Build a lexicon from heterogeneous source lexica.

Pipeline: per-source extraction into a common entry format, unification
merge across sources, dictionary verification, semantic tagging.  Source
formats are handled by adapters registered under the source id; three ship
for the bundled mini-resources (a suffix-table format, a closed-class list
with features, and a surface/lemma/tag list).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, fields
from typing import Iterable, Mapping, Sequence

from .lexicon import Category, LexEntry, Lexicon, SemanticTag

log = logging.getLogger(__name__)

# Table 5 ordering, used by build reports.
REPORT_CATEGORIES = (
    Category.NOUN,
    Category.PRONOUN,
    Category.VERB,
    Category.ADJECTIVE,
    Category.ADVERB,
    Category.CONJUNCTION,
    Category.DETERMINER,
    Category.PREPOSITION,
)

_EXCLUDED_CATEGORIES = {"interjection", "numeral", "proper_noun"}


class BuildError(Exception):
    """The build pipeline could not produce a usable lexicon."""


class UnexpandableRecordError(Exception):
    """A source record's inflection rules could not be expanded."""


@dataclass(frozen=True)
class SourceRecord:
    """One raw entry from a source lexicon, before normalization."""

    source_id: str
    lemma: str
    category: str  # source category label; may fall outside the nine
    raw_features: tuple[tuple[str, str], ...] = ()

    @property
    def features(self) -> dict[str, str]:
        return dict(self.raw_features)


def _feat(mapping: Mapping[str, str]) -> tuple[tuple[str, str], ...]:
    return tuple(sorted(mapping.items()))


class DictionaryOracle:
    """Dictionary stand-in: which lemmas exist, under which categories.

    File format: ``lemma<TAB>cat1,cat2`` per line.
    """

    def __init__(self, entries: Mapping[str, Iterable[Category]]):
        self._entries = {
            lemma.lower(): frozenset(cats) for lemma, cats in entries.items()
        }

    @classmethod
    def from_text(cls, text: str) -> "DictionaryOracle":
        entries: dict[str, set[Category]] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                lemma, cats = line.split("\t")
                parsed = {Category(c.strip()) for c in cats.split(",")}
            except ValueError as exc:
                raise BuildError(f"dictionary line {lineno}: {exc}") from None
            entries.setdefault(lemma.lower(), set()).update(parsed)
        return cls(entries)

    def contains(self, lemma: str) -> bool:
        return lemma.lower() in self._entries

    def categories(self, lemma: str) -> frozenset[Category]:
        return self._entries.get(lemma.lower(), frozenset())


class PermissiveOracle(DictionaryOracle):
    """Accepts every lemma in every category (verification no-op)."""

    def __init__(self):
        super().__init__({})

    def contains(self, lemma: str) -> bool:
        return True

    def categories(self, lemma: str) -> frozenset[Category]:
        return frozenset(Category)


class SemanticResource:
    """Lemma to semantic-tag mapping.  File format: ``lemma<TAB>tag``."""

    def __init__(self, tags: Mapping[str, SemanticTag]):
        self._tags = {lemma.lower(): tag for lemma, tag in tags.items()}

    @classmethod
    def from_text(cls, text: str) -> "SemanticResource":
        tags: dict[str, SemanticTag] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                lemma, tag = line.split("\t")
                tags[lemma.lower()] = SemanticTag(tag.strip())
            except ValueError as exc:
                raise BuildError(f"semantics line {lineno}: {exc}") from None
        return cls(tags)

    def get(self, lemma: str) -> SemanticTag | None:
        return self._tags.get(lemma.lower())

    def __contains__(self, lemma: str) -> bool:
        return lemma.lower() in self._tags


# ---------------------------------------------------------------------------
# Source adapters
# ---------------------------------------------------------------------------


class EnLexAdapter:
    """Suffix-table source: entry lines plus <table> blocks.

    Entry lines look like ``picture<TAB>N2 100;Lemma;N;;cat=N;`` where N2
    names an inflection table whose form rules carry a suffix and a tag.
    A table's ``rads`` regex must match the lemma; a capture group, when
    present, selects the stem the suffix is appended to.
    """

    source_id = "enlex"

    _CATEGORY_CODES = {
        "N": Category.NOUN.value,
        "V": Category.VERB.value,
        "A": Category.ADJECTIVE.value,
        "R": Category.ADVERB.value,
        "D": Category.DETERMINER.value,
        "C": Category.CONJUNCTION.value,
        "S": Category.PREPOSITION.value,
        "P": Category.PRONOUN.value,
        "I": "interjection",
        "M": "numeral",
    }

    def parse(self, text: str) -> list[SourceRecord]:
        tables: dict[str, dict] = {}
        pending: list[tuple[str, str]] = []
        current: dict | None = None
        for line in text.splitlines():
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if stripped.startswith("<table"):
                name = _attr(stripped, "name") or ""
                current = {"name": name, "rads": _attr(stripped, "rads") or ".*", "forms": []}
                continue
            if stripped.startswith("</table"):
                if current is not None:
                    tables[current["name"]] = current
                current = None
                continue
            if stripped.startswith("<form"):
                if current is not None:
                    tag = _attr(stripped, "tag") or ""
                    suffix = _attr(stripped, "suffix") or ""
                    # tolerate the broken quoting seen in the wild, where an
                    # empty suffix swallows the tag attribute
                    if "tag=" in suffix:
                        suffix = ""
                    current["forms"].append((tag, suffix))
                continue
            if "\t" in stripped:
                lemma, info = stripped.split("\t", 1)
                pending.append((lemma.strip().lower(), info.strip()))
        records = []
        for lemma, info in pending:
            table_name = info.split(" ")[0].split(";")[0]
            cat_code = ""
            for piece in info.split(";"):
                if piece.strip().lower().startswith("cat="):
                    cat_code = piece.split("=", 1)[1].strip()
            category = self._CATEGORY_CODES.get(cat_code.upper(), cat_code.lower())
            feats: dict[str, str] = {"table": table_name}
            table = tables.get(table_name)
            if table is not None:
                feats["rads"] = table["rads"]
                feats["forms"] = ";".join(f"{t}={s}" for t, s in table["forms"])
            records.append(
                SourceRecord(
                    source_id=self.source_id,
                    lemma=lemma,
                    category=category,
                    raw_features=_feat(feats),
                )
            )
        return records

    def to_entry(self, record: SourceRecord) -> LexEntry:
        feats = record.features
        if "forms" not in feats:
            raise UnexpandableRecordError(
                f"{record.lemma}: inflection table {feats.get('table')!r} undefined"
            )
        rads = feats.get("rads", ".*")
        match = re.search(rads, record.lemma)
        if match is None:
            raise UnexpandableRecordError(
                f"{record.lemma}: stem pattern {rads!r} does not match"
            )
        stem = match.group(1) if match.groups() else record.lemma
        expanded: dict[str, str] = {}
        for rule in feats["forms"].split(";"):
            if not rule:
                continue
            tag, _, suffix = rule.partition("=")
            expanded[tag] = stem + suffix
        category = Category(record.category)
        if category == Category.NOUN:
            return LexEntry(
                lemma=record.lemma,
                category=category,
                number="singular",
                plural_form=expanded.get("p"),
                sources=frozenset({record.source_id}),
            )
        if category == Category.VERB:
            return LexEntry(
                lemma=record.lemma,
                category=category,
                present3s=expanded.get("p3s"),
                past=expanded.get("past"),
                present_participle=expanded.get("ppres"),
                past_participle=expanded.get("ppast"),
                sources=frozenset({record.source_id}),
            )
        return LexEntry(
            lemma=record.lemma,
            category=category,
            sources=frozenset({record.source_id}),
        )


def _attr(line: str, name: str) -> str | None:
    m = re.search(rf'{name}="([^"]*)"', line)
    return m.group(1) if m else None


class NihAdapter:
    """Closed-class list: ``lemma<TAB>category[<TAB>key=value;...]``."""

    source_id = "nih"

    def parse(self, text: str) -> list[SourceRecord]:
        records = []
        for line in text.splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.rstrip("\n").split("\t")
            lemma, category = parts[0].lower(), parts[1]
            feats: dict[str, str] = {}
            if len(parts) > 2 and parts[2]:
                for piece in parts[2].split(";"):
                    key, _, value = piece.partition("=")
                    feats[key] = value
            records.append(
                SourceRecord(
                    source_id=self.source_id,
                    lemma=lemma,
                    category=category,
                    raw_features=_feat(feats),
                )
            )
        return records

    def to_entry(self, record: SourceRecord) -> LexEntry:
        feats = record.features
        category = Category(record.category)
        kwargs: dict = {}
        if category == Category.PRONOUN:
            if "person" in feats:
                kwargs["person"] = int(feats["person"])
            if "number" in feats:
                kwargs["number"] = feats["number"]
            if "gender" in feats:
                kwargs["gender"] = feats["gender"]
        elif category == Category.DETERMINER:
            if "plural" in feats:
                kwargs["number"] = "singular"
                kwargs["plural_form"] = feats["plural"]
        elif category == Category.ADVERB:
            if "tense" in feats:
                kwargs["tense_hint"] = feats["tense"]
        return LexEntry(
            lemma=record.lemma,
            category=category,
            sources=frozenset({record.source_id}),
            **kwargs,
        )


class FreelingAdapter:
    """Surface/lemma/tag triples; verbs aggregate across their form lines."""

    source_id = "freeling"

    _TAG_CATEGORIES = {
        "NN": Category.NOUN.value,
        "NNS": Category.NOUN.value,
        "VB": Category.VERB.value,
        "VBZ": Category.VERB.value,
        "VBD": Category.VERB.value,
        "VBG": Category.VERB.value,
        "VBN": Category.VERB.value,
        "JJ": Category.ADJECTIVE.value,
        "RB": Category.ADVERB.value,
        "UH": "interjection",
        "CD": "numeral",
    }

    def parse(self, text: str) -> list[SourceRecord]:
        grouped: dict[tuple[str, str], dict[str, str]] = {}
        order: list[tuple[str, str]] = []
        for line in text.splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            surface, lemma, tag = line.rstrip("\n").split("\t")
            lemma = lemma.lower()
            category = self._TAG_CATEGORIES.get(tag, tag.lower())
            key = (lemma, category)
            if key not in grouped:
                grouped[key] = {}
                order.append(key)
            grouped[key].setdefault(tag, surface.lower())
        return [
            SourceRecord(
                source_id=self.source_id,
                lemma=lemma,
                category=category,
                raw_features=_feat(grouped[(lemma, category)]),
            )
            for lemma, category in order
        ]

    def to_entry(self, record: SourceRecord) -> LexEntry:
        feats = record.features
        category = Category(record.category)
        if category == Category.VERB:
            return LexEntry(
                lemma=record.lemma,
                category=category,
                present3s=feats.get("VBZ"),
                past=feats.get("VBD"),
                present_participle=feats.get("VBG"),
                past_participle=feats.get("VBN"),
                sources=frozenset({record.source_id}),
            )
        if category == Category.NOUN:
            return LexEntry(
                lemma=record.lemma,
                category=category,
                number="singular",
                plural_form=feats.get("NNS"),
                sources=frozenset({record.source_id}),
            )
        return LexEntry(
            lemma=record.lemma,
            category=category,
            sources=frozenset({record.source_id}),
        )


ADAPTERS = {
    adapter.source_id: adapter
    for adapter in (EnLexAdapter(), NihAdapter(), FreelingAdapter())
}


# ---------------------------------------------------------------------------
# Pipeline stages
# ---------------------------------------------------------------------------


def extract_map(records: Sequence[SourceRecord]) -> set[LexEntry]:
    """Normalize source records into lexicon entries.

    Records with excluded or unknown categories are skipped; records whose
    inflection rules cannot be expanded are rejected with a logged reason
    and the extraction continues.
    """
    out: dict[tuple[str, str], LexEntry] = {}
    for record in records:
        adapter = ADAPTERS.get(record.source_id)
        if adapter is None:
            raise BuildError(f"no adapter registered for {record.source_id!r}")
        if record.category in _EXCLUDED_CATEGORIES:
            continue
        try:
            Category(record.category)
        except ValueError:
            log.info("skipping %s: unsupported category %r", record.lemma, record.category)
            continue
        try:
            entry = adapter.to_entry(record)
        except UnexpandableRecordError as exc:
            log.warning("rejected record: %s", exc)
            continue
        key = (entry.lemma, entry.category.value)
        if key in out:
            out[key] = _unify(out[key], entry, [record.source_id])
        else:
            out[key] = entry
    return set(out.values())


_ATOMIC_FIELDS = tuple(
    f.name
    for f in fields(LexEntry)
    if f.name not in ("lemma", "category", "preps", "sources")
)


def _unify(first: LexEntry, second: LexEntry, priority: Sequence[str]) -> LexEntry:
    """Merge two entries for the same key; ``priority`` settles conflicts."""

    def rank(entry: LexEntry) -> int:
        ranks = [priority.index(s) for s in entry.sources if s in priority]
        return min(ranks) if ranks else len(priority)

    primary, secondary = (first, second)
    if rank(second) < rank(first):
        primary, secondary = (second, first)
    kwargs: dict = {}
    for name in _ATOMIC_FIELDS:
        a, b = getattr(primary, name), getattr(secondary, name)
        if a is not None and b is not None and a != b:
            log.info(
                "conflict on %s/%s.%s: %r beats %r",
                first.lemma,
                first.category.value,
                name,
                a,
                b,
            )
            kwargs[name] = a
        else:
            kwargs[name] = a if a is not None else b
    prep_map = dict(secondary.preps)
    prep_map.update(dict(primary.preps))
    return LexEntry(
        lemma=first.lemma,
        category=first.category,
        preps=tuple(sorted(prep_map.items())),
        sources=first.sources | second.sources,
        **kwargs,
    )


def merge(
    sets: Sequence[Iterable[LexEntry]], priority: Sequence[str] | None = None
) -> set[LexEntry]:
    """Unify entries sharing a (lemma, category) key across source sets.

    A field present in one source is kept; fields present in several
    sources with equal values collapse; unequal atomic values are settled
    by the source-priority order (default: order of appearance).
    """
    if priority is None:
        priority = []
        for entries in sets:
            for entry in entries:
                for source in sorted(entry.sources):
                    if source not in priority:
                        priority.append(source)
    out: dict[tuple[str, str], LexEntry] = {}
    for entries in sets:
        for entry in sorted(entries, key=lambda e: (e.lemma, e.category.value)):
            key = (entry.lemma, entry.category.value)
            if key in out:
                out[key] = _unify(out[key], entry, priority)
            else:
                out[key] = entry
    return set(out.values())


def verify(entries: Iterable[LexEntry], oracle: DictionaryOracle) -> set[LexEntry]:
    """Drop entries whose lemma or category the dictionary does not attest."""
    kept = set()
    for entry in entries:
        if oracle.contains(entry.lemma) and entry.category in oracle.categories(
            entry.lemma
        ):
            kept.add(entry)
        else:
            log.info(
                "verification removed %s/%s", entry.lemma, entry.category.value
            )
    return kept


def add_semantics(
    entries: Iterable[LexEntry],
    res: SemanticResource,
    fallback: SemanticResource | None = None,
) -> set[LexEntry]:
    """Tag nouns from the primary resource, then the fallback."""
    out = set()
    for entry in entries:
        if entry.category == Category.NOUN:
            tag = res.get(entry.lemma)
            if tag is None and fallback is not None:
                tag = fallback.get(entry.lemma)
            if tag is not None and entry.semantic_tag is None:
                from dataclasses import replace

                entry = replace(entry, semantic_tag=tag)
        out.add(entry)
    return out


@dataclass
class BuildReport:
    merged: dict[Category, int]
    verified: dict[Category, int]

    @property
    def merged_total(self) -> int:
        return sum(self.merged.values())

    @property
    def verified_total(self) -> int:
        return sum(self.verified.values())

    def text(self) -> str:
        lines = []
        for category in REPORT_CATEGORIES:
            lines.append(
                f"{category.value}\t{self.merged.get(category, 0)}"
                f"\t{self.verified.get(category, 0)}"
            )
        lines.append(f"total\t{self.merged_total}\t{self.verified_total}")
        return "\n".join(lines) + "\n"


def _category_counts(entries: Iterable[LexEntry]) -> dict[Category, int]:
    counts: dict[Category, int] = {}
    for entry in entries:
        counts[entry.category] = counts.get(entry.category, 0) + 1
    return counts


def build(
    sources: Sequence[tuple[str, str]],
    oracle: DictionaryOracle,
    semantic_resources: tuple[SemanticResource, SemanticResource | None],
    priority: Sequence[str] | None = None,
) -> tuple[Lexicon, BuildReport]:
    """Run the whole pipeline over (source_id, text) inputs.

    Returns the indexed lexicon and a per-category merged/verified report.
    Fails only when no entry survives.
    """
    if not sources:
        raise BuildError("at least one source is required")
    per_source: list[set[LexEntry]] = []
    for source_id, text in sources:
        adapter = ADAPTERS.get(source_id)
        if adapter is None:
            raise BuildError(f"no adapter registered for {source_id!r}")
        per_source.append(extract_map(adapter.parse(text)))
    if priority is None:
        priority = [source_id for source_id, _ in sources]
    merged = merge(per_source, priority)
    verified = verify(merged, oracle)
    primary, fallback = semantic_resources
    tagged = add_semantics(verified, primary, fallback)
    if not tagged:
        raise BuildError("no entries survived the build pipeline")
    report = BuildReport(
        merged=_category_counts(merged), verified=_category_counts(tagged)
    )
    return Lexicon(tagged), report
