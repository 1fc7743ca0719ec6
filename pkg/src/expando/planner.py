"""Sentence planning: sentence type, default subject, extra-element filling.

The planner sits between the grammar and the realiser.  It decides the
sentence type from the raw keywords, lexicalises keywords into categorised
tokens, supplies a default subject when the grammar found none, and turns
each candidate tree into scored plans by choosing words for the unbound
determiner/conjunction/preposition slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .grammar import (
    ADJS,
    CNS,
    NS,
    PREDICATE,
    PS,
    SENTENCE,
    SUBJECT,
    SyntaxTree,
    has_subject,
)
from .lexicon import PLURAL, Category, LexEntry, Lexicon
from .prepmodel import PrepModel

NEGATION_WORD = "not"
QUESTION_MARK = "?"
DEFAULT_SUBJECT = "i"
DEFAULT_DETERMINER = "the"
DEFAULT_CONJUNCTION = "and"
PREP_PROBABILITY_THRESHOLD = 0.2

AFFIRMATIVE = "affirmative"
NEGATIVE = "negative"
DECLARATIVE = "declarative"
INTERROGATIVE = "interrogative"
IMPERATIVE = "imperative"


@dataclass(frozen=True)
class SentenceType:
    polarity: str = AFFIRMATIVE
    mood: str = DECLARATIVE


def detect_type(keywords: Sequence[str]) -> tuple[SentenceType, list[str]]:
    """Strip the "not"/"?" markers and classify the sentence type."""
    negative = False
    interrogative = False
    remaining: list[str] = []
    for word in keywords:
        if word.lower() == NEGATION_WORD:
            negative = True
        elif word == QUESTION_MARK:
            interrogative = True
        else:
            remaining.append(word)
    return (
        SentenceType(
            polarity=NEGATIVE if negative else AFFIRMATIVE,
            mood=INTERROGATIVE if interrogative else DECLARATIVE,
        ),
        remaining,
    )


@dataclass
class Token:
    """One input keyword after lexicon lookup (possibly a fused locution)."""

    text: str
    matches: dict[Category, tuple[LexEntry | None, dict]]
    synthetic: bool = False

    @property
    def categories(self) -> set[Category]:
        return set(self.matches)

    def entry(self, category: Category) -> LexEntry | None:
        hit = self.matches.get(category)
        return hit[0] if hit else None

    def features(self, category: Category) -> dict:
        hit = self.matches.get(category)
        return dict(hit[1]) if hit else {}


def categorize_keywords(keywords: Sequence[str], lex: Lexicon) -> list[Token]:
    """Resolve keywords against the lexicon, fusing multiword locutions.

    Consecutive keywords whose joined form is a lexicon lemma ("last night",
    "how much") become a single token, longest match first.  Unknown words
    get the proper-noun fallback category.
    """
    tokens: list[Token] = []
    words = [w.lower() for w in keywords]
    i = 0
    while i < len(words):
        fused = None
        for n in range(min(lex.max_lemma_words, len(words) - i), 1, -1):
            joined = " ".join(words[i : i + n])
            if lex.lookup(joined):
                fused = joined
                break
        word = fused if fused else words[i]
        i += len(word.split()) if fused else 1
        matches: dict[Category, tuple[LexEntry | None, dict]] = {}
        for entry, feats in lex.lookup(word):
            matches.setdefault(entry.category, (entry, feats))
        if not matches:
            matches[Category.PROPER_NOUN] = (None, {})
        tokens.append(Token(text=word, matches=matches))
    return tokens


def grammar_input(tokens: Sequence[Token]) -> list[tuple[str, set[Category]]]:
    return [(tok.text, tok.categories) for tok in tokens]


def insert_subject(
    trees: Sequence[SyntaxTree], default_index: int
) -> list[SyntaxTree]:
    """Provide a default subject when no candidate tree found one.

    For each subject-less candidate two variants are emitted: the tree with
    the default pronoun subject prepended (bound to ``default_index`` in the
    caller's token list) and the original tree for an imperative reading.
    Candidates that already carry a subject pass through unchanged.
    """
    if any(has_subject(t) for t in trees):
        return list(trees)
    out: list[SyntaxTree] = []
    for tree in trees:
        pronoun = SyntaxTree(
            Category.PRONOUN.value, token_index=default_index, depth=3
        )
        subject = SyntaxTree(SUBJECT, (SyntaxTree(NS, (pronoun,), depth=2),), depth=1)
        out.append(SyntaxTree(SENTENCE, (subject,) + tree.children, depth=0))
        out.append(tree)
    return out


@dataclass
class SentencePlan:
    """A fully-filled candidate: tree, slot fillers, and ranking score."""

    sentence_type: SentenceType
    tree: SyntaxTree
    fillers: dict[int, str | None]
    score: float
    tree_order: int = 0
    notes: list[str] = field(default_factory=list)
    tokens: Sequence[Token] = ()
    attach_penalty: int = 0
    subject_features: "object | None" = None
    tense: str | None = None

    def sort_key(self):
        filler_key = tuple(
            self.fillers[i] or "" for i in sorted(self.fillers)
        )
        return (-self.score, self.attach_penalty, self.tree_order, filler_key)


def _head_noun(ns: SyntaxTree, tokens: Sequence[Token]) -> tuple[LexEntry | None, dict]:
    """Entry and matched features of an NS head (None entry for proper nouns)."""
    for child in ns.children:
        if child.token_index is None:
            continue
        if child.label == Category.NOUN.value:
            tok = tokens[child.token_index]
            return tok.entry(Category.NOUN), tok.features(Category.NOUN)
        if child.label == Category.PRONOUN.value:
            tok = tokens[child.token_index]
            return tok.entry(Category.PRONOUN), tok.features(Category.PRONOUN)
        if child.label == Category.PROPER_NOUN.value:
            return None, {}
    return None, {}


def _predicate_verb(tree: SyntaxTree, tokens: Sequence[Token]) -> LexEntry | None:
    predicate = tree.find(PREDICATE)
    if predicate is None:
        return None
    for child in predicate.children:
        if child.label == Category.VERB.value and child.token_index is not None:
            return tokens[child.token_index].entry(Category.VERB)
    return None


def _first_object(predicate: SyntaxTree) -> SyntaxTree | None:
    """The NS/CNS complement directly governed by the predicate, if any."""
    for child in predicate.children:
        if child.label in (NS, CNS):
            return child
    return None


def fill_extras(
    tree: SyntaxTree,
    lex: Lexicon,
    model: PrepModel,
    tokens: Sequence[Token],
    sentence_type: SentenceType = SentenceType(),
    tree_order: int = 0,
    threshold: float = PREP_PROBABILITY_THRESHOLD,
) -> list[SentencePlan]:
    """Choose fillers for every unbound slot of ``tree``.

    Determiners and conjunctions are filled deterministically; preposition
    slots branch over the model's ranked candidates, so one tree can yield
    several plans.  The plan score is the product of the chosen preposition
    probabilities; a tree whose verb-object pairing has zero probability
    yields no plan.
    """
    slots = tree.slot_nodes()
    verb_entry = _predicate_verb(tree, tokens)
    verb_lemma = verb_entry.lemma if verb_entry else None

    notes: list[str] = []
    base_score = 1.0
    predicate = tree.find(PREDICATE)
    # Predicative adjectives belong with the copula; an adjective attached
    # at predicate level under any other verb loses equal-score ties to the
    # attributive reading.
    attach_penalty = 0
    if (
        predicate is not None
        and verb_lemma is not None
        and verb_lemma != "be"
        and any(child.label == ADJS for child in predicate.children)
    ):
        attach_penalty = 1
    obj = _first_object(predicate) if predicate is not None else None
    # A coordinated object starting with an objective pronoun ("me and the
    # cookie") loses ties to the ditransitive reading ("gave me the cookie").
    if obj is not None and obj.label == CNS:
        first_ns = obj.children[0]
        if any(
            leaf.label == Category.PRONOUN.value for leaf in first_ns.bound_leaves()
        ):
            attach_penalty += 1
    if obj is not None and verb_lemma is not None:
        head_ns = obj.children[0] if obj.label == CNS else obj
        head_entry, _ = _head_noun(head_ns, tokens)
        tag = head_entry.semantic_tag if head_entry else None
        dist = model.distribution(verb_lemma, tag) if tag else {}
        if tag is None or not dist:
            if tag is None and head_entry is not None:
                notes.append(
                    f"object '{head_entry.lemma}' has no semantic tag; "
                    "keeping bare object"
                )
        else:
            base_score *= dist.get(None, 0.0)
            notes.append(
                f"bare object after '{verb_lemma}' "
                f"(p={dist.get(None, 0.0):.3f})"
            )

    choices: list[list[tuple[str | None, float, str]]] = []
    for slot_id, slot in enumerate(slots):
        if slot.slot_kind == "conj":
            choices.append([(DEFAULT_CONJUNCTION, 1.0, "conjunction 'and'")])
        elif slot.slot_kind == "det":
            filler, why = _determiner_filler(tree, slot, tokens)
            choices.append([(filler, 1.0, why)])
        elif slot.slot_kind == "prep":
            choices.append(
                _prep_choices(tree, slot, tokens, model, verb_lemma, threshold)
            )
        else:  # pragma: no cover - grammar emits only the three kinds
            choices.append([(None, 1.0, "")])

    plans: list[SentencePlan] = []
    for combo in product(*choices) if choices else [()]:
        score = base_score
        fillers: dict[int, str | None] = {}
        combo_notes = list(notes)
        for slot_id, (word, prob, why) in enumerate(combo):
            fillers[slot_id] = word
            score *= prob
            if why:
                combo_notes.append(why)
        if score <= 0.0:
            continue
        plans.append(
            SentencePlan(
                sentence_type=sentence_type,
                tree=tree,
                fillers=fillers,
                score=score,
                tree_order=tree_order,
                notes=combo_notes,
                tokens=tokens,
                attach_penalty=attach_penalty,
            )
        )
    plans.sort(key=SentencePlan.sort_key)
    return plans


def _enclosing_ns(tree: SyntaxTree, slot: SyntaxTree) -> tuple[SyntaxTree | None, SyntaxTree | None]:
    """(NS containing slot, its CNS parent if any)."""
    parent_of: dict[int, SyntaxTree] = {}

    def index(node):
        for child in node.children:
            parent_of[id(child)] = node
            index(child)

    index(tree)
    node = slot
    ns = None
    while id(node) in parent_of:
        node = parent_of[id(node)]
        if node.label == NS:
            ns = node
            break
    cns = None
    if ns is not None and id(ns) in parent_of and parent_of[id(ns)].label == CNS:
        cns = parent_of[id(ns)]
    return ns, cns


def _determiner_filler(
    tree: SyntaxTree, slot: SyntaxTree, tokens: Sequence[Token]
) -> tuple[str | None, str]:
    ns, cns = _enclosing_ns(tree, slot)
    if ns is None:  # pragma: no cover - det slots only occur inside NS
        return None, ""
    entry, feats = _head_noun(ns, tokens)
    if entry is None:
        return None, "no determiner for proper noun"
    number = feats.get("number") or entry.number
    if number == PLURAL:
        return None, f"no determiner for plural '{entry.lemma}'"
    if entry.plural_form is None:
        # nouns stored without a plural act as mass nouns and stay bare
        return None, f"no determiner for mass noun '{entry.lemma}'"
    if cns is not None and cns.children and cns.children[0] is not ns:
        return None, "determiner shared across coordination"
    return DEFAULT_DETERMINER, f"determiner 'the' before '{entry.lemma}'"


def _prep_choices(
    tree: SyntaxTree,
    slot: SyntaxTree,
    tokens: Sequence[Token],
    model: PrepModel,
    verb_lemma: str | None,
    threshold: float,
) -> list[tuple[str | None, float, str]]:
    ns, _ = _slot_ps_object(tree, slot)
    entry, _feats = _head_noun(ns, tokens) if ns is not None else (None, {})
    tag = entry.semantic_tag if entry else None
    if verb_lemma is None or tag is None:
        why = "preposition slot fallback: object has no semantic tag"
        return [(None, 1.0, why)]
    ranked = model.infer(verb_lemma, tag)
    argmax = ranked[0][0]
    out = []
    for prep, prob in ranked:
        if prob < threshold and prep != argmax:
            continue
        if prep is None:
            out.append((None, prob, f"no preposition after '{verb_lemma}' (p={prob:.3f})"))
        else:
            out.append(
                (prep, prob, f"preposition '{prep}' after '{verb_lemma}' (p={prob:.3f})")
            )
    return out


def _slot_ps_object(tree: SyntaxTree, slot: SyntaxTree) -> tuple[SyntaxTree | None, SyntaxTree | None]:
    """The NS governed by the PS whose preposition slot this is."""
    for node in tree.walk():
        if node.label == PS and slot in node.children:
            for child in node.children:
                if child.label == NS:
                    return child, node
    return None, None
