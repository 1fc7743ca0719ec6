"""Clause grammar and depth-first enumeration of candidate syntax trees.

The grammar is a fixed inventory of production rules over eight
nonterminals.  Input tokens bind left-to-right to terminal slots that match
one of their candidate categories; determiner, preposition, and conjunction
slots may additionally stay unbound so the planner can fill them with
inserted words.  Recursion is capped: a nominal syntagm inside a
prepositional syntagm may not contain another prepositional syntagm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .lexicon import Category

SENTENCE = "SENTENCE"
SUBJECT = "SUBJECT"
PREDICATE = "PREDICATE"
NS = "NS"
CNS = "CNS"
PS = "PS"
ADJS = "ADJS"
ADVS = "ADVS"

NONTERMINALS = (SENTENCE, SUBJECT, PREDICATE, NS, CNS, PS, ADJS, ADVS)

# insertable slot kinds, by terminal category
_SLOT_KINDS = {
    Category.DETERMINER.value: "det",
    Category.PREPOSITION.value: "prep",
    Category.CONJUNCTION.value: "conj",
}


@dataclass(frozen=True)
class Slot:
    """One right-hand-side position: alternative symbols plus flags."""

    symbols: tuple[str, ...]
    optional: bool = False
    insertable: bool = False
    repeat: bool = False


@dataclass(frozen=True)
class GrammarRule:
    lhs: str
    rhs: tuple[Slot, ...]


@dataclass(frozen=True)
class SyntaxTree:
    """Constituent node; leaves carry a token index or an unbound slot."""

    label: str
    children: tuple["SyntaxTree", ...] = ()
    token_index: int | None = None
    slot_kind: str | None = None
    depth: int = 0

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self) -> Iterator["SyntaxTree"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def bound_leaves(self) -> list["SyntaxTree"]:
        return [n for n in self.walk() if n.token_index is not None]

    def slot_nodes(self) -> list["SyntaxTree"]:
        """Unbound insertable slots in left-to-right order.

        The position in this list is the slot's identity; the planner keys
        its fillers by it.
        """
        return [n for n in self.walk() if n.slot_kind is not None]

    def find(self, label: str) -> "SyntaxTree | None":
        for node in self.walk():
            if node.label == label:
                return node
        return None


def _t(*symbols: str, optional=False, insertable=False, repeat=False) -> Slot:
    return Slot(tuple(symbols), optional=optional, insertable=insertable, repeat=repeat)


_NOUN = Category.NOUN.value
_PRONOUN = Category.PRONOUN.value
_PROPER = Category.PROPER_NOUN.value
_VERB = Category.VERB.value
_ADJ = Category.ADJECTIVE.value
_ADV = Category.ADVERB.value
_DET = Category.DETERMINER.value
_PREP = Category.PREPOSITION.value
_CONJ = Category.CONJUNCTION.value


def builtin_rules() -> list[GrammarRule]:
    """The compiled-in rule inventory, in DFS declaration order."""
    return [
        # A sentence is an optionally adverb-fronted subject plus predicate,
        # or a bare predicate (imperatives, elided subjects).
        GrammarRule(SENTENCE, (_t(ADVS, optional=True), _t(SUBJECT), _t(PREDICATE))),
        GrammarRule(SENTENCE, (_t(PREDICATE),)),
        GrammarRule(SUBJECT, (_t(CNS),)),
        GrammarRule(SUBJECT, (_t(NS),)),
        # Two nominal syntagms joined by a (possibly inserted) conjunction.
        GrammarRule(CNS, (_t(NS), _t(_CONJ, insertable=True), _t(NS))),
        # Noun-headed NS: determiner slot, optional modifier syntagms before
        # and after the head, proper-noun premodifiers, trailing PS.
        GrammarRule(
            NS,
            (
                _t(_DET, insertable=True),
                _t(ADJS, ADVS, optional=True),
                _t(_PROPER, optional=True, repeat=True),
                _t(_NOUN),
                _t(ADJS, ADVS, optional=True),
                _t(PS, optional=True),
            ),
        ),
        GrammarRule(NS, (_t(_PRONOUN),)),
        GrammarRule(NS, (_t(_PROPER), _t(_PROPER, optional=True, repeat=True))),
        GrammarRule(PS, (_t(_PREP, insertable=True), _t(NS))),
        GrammarRule(ADJS, (_t(_ADV), _t(_ADJ))),
        GrammarRule(ADJS, (_t(_ADJ), _t(_ADV))),
        GrammarRule(ADJS, (_t(_ADJ),)),
        GrammarRule(ADVS, (_t(_ADV),)),
        # Single object (possibly coordinated), double object, no object.
        GrammarRule(
            PREDICATE,
            (
                _t(_VERB),
                _t(ADJS, ADVS, optional=True),
                _t(CNS, NS),
                _t(PS, optional=True, repeat=True),
            ),
        ),
        GrammarRule(
            PREDICATE,
            (
                _t(_VERB),
                _t(ADJS, ADVS, optional=True),
                _t(CNS, NS),
                _t(NS),
                _t(PS, optional=True, repeat=True),
            ),
        ),
        GrammarRule(
            PREDICATE,
            (
                _t(_VERB),
                _t(ADJS, ADVS, optional=True),
                _t(PS, optional=True, repeat=True),
            ),
        ),
    ]


TokenCats = Sequence[tuple[str, Iterable[Category]]]


def parse_candidates(
    tokens: TokenCats,
    rules: list[GrammarRule] | None = None,
    limit: int | None = None,
) -> list[SyntaxTree]:
    """All full-coverage syntax trees for a categorised token sequence.

    Deterministic: rules are tried in declaration order, optional and
    repeated slots binding-first, so identical input yields an identical
    tree list.  Unparseable input yields an empty list.  ``limit`` caps the
    enumeration (first trees in DFS order) for highly ambiguous inputs.
    """
    rule_list = rules if rules is not None else builtin_rules()
    by_lhs: dict[str, list[GrammarRule]] = {}
    for rule in rule_list:
        by_lhs.setdefault(rule.lhs, []).append(rule)
    n = len(tokens)
    cats = [frozenset(c) for _, c in tokens]

    def match_symbol(sym, pos, in_ps, depth):
        if sym in by_lhs:
            child_in_ps = in_ps or sym == PS
            for rule in by_lhs[sym]:
                for children, end in match_slots(
                    rule.rhs, 0, pos, child_in_ps, depth + 1
                ):
                    yield SyntaxTree(sym, tuple(children), depth=depth), end
        else:
            if pos < n and Category(sym) in cats[pos]:
                yield SyntaxTree(sym, token_index=pos, depth=depth), pos + 1

    def match_once(slot, pos, in_ps, depth):
        for sym in slot.symbols:
            yield from match_symbol(sym, pos, in_ps, depth)

    def match_repeat(slot, pos, in_ps, depth):
        # one or more occurrences, longest first
        for node, end in match_once(slot, pos, in_ps, depth):
            if end == pos:
                continue
            yield from (
                ([node] + more, end2)
                for more, end2 in match_repeat(slot, end, in_ps, depth)
            )
            yield [node], end

    def match_slots(slots, i, pos, in_ps, depth):
        if i == len(slots):
            yield [], pos
            return
        slot = slots[i]
        # recursion cap: an NS inside a PS takes no PS of its own
        skip_only = slot.symbols == (PS,) and not slot.repeat and in_ps
        if slot.repeat:
            if not skip_only:
                for nodes, end in match_repeat(slot, pos, in_ps, depth):
                    for rest, final in match_slots(slots, i + 1, end, in_ps, depth):
                        yield nodes + rest, final
            for rest, final in match_slots(slots, i + 1, pos, in_ps, depth):
                yield rest, final
            return
        if slot.insertable:
            bound = False
            if not skip_only:
                for node, end in match_once(slot, pos, in_ps, depth):
                    bound = True
                    for rest, final in match_slots(slots, i + 1, end, in_ps, depth):
                        yield [node] + rest, final
            if not bound:
                kind = _SLOT_KINDS[slot.symbols[0]]
                placeholder = SyntaxTree(slot.symbols[0], slot_kind=kind, depth=depth)
                for rest, final in match_slots(slots, i + 1, pos, in_ps, depth):
                    yield [placeholder] + rest, final
            return
        if not skip_only:
            for node, end in match_once(slot, pos, in_ps, depth):
                for rest, final in match_slots(slots, i + 1, end, in_ps, depth):
                    yield [node] + rest, final
        if slot.optional or skip_only:
            for rest, final in match_slots(slots, i + 1, pos, in_ps, depth):
                yield rest, final

    results: list[SyntaxTree] = []
    seen: set[SyntaxTree] = set()
    for tree, end in match_symbol(SENTENCE, 0, False, 0):
        if end == n and n > 0 and tree not in seen:
            seen.add(tree)
            results.append(tree)
            if limit is not None and len(results) >= limit:
                break
    return results


def has_subject(tree: SyntaxTree) -> bool:
    return any(child.label == SUBJECT for child in tree.children)


def fronted_adverbial(tree: SyntaxTree) -> SyntaxTree | None:
    """The sentence-initial ADVS constituent, when the rule bound one."""
    if tree.children and tree.children[0].label == ADVS:
        return tree.children[0]
    return None


def split_subject_predicate(tree: SyntaxTree) -> tuple[SyntaxTree | None, SyntaxTree]:
    """Split a SENTENCE tree at the verb boundary.

    Returns the subject NS/CNS (or None for subject-less clauses) and the
    verb-headed predicate subtree.
    """
    if tree.label != SENTENCE:
        raise ValueError(f"expected a SENTENCE tree, got {tree.label}")
    subject = None
    predicate = None
    for child in tree.children:
        if child.label == SUBJECT:
            subject = child.children[0]
        elif child.label == PREDICATE:
            predicate = child
    if predicate is None:  # pragma: no cover - grammar guarantees a predicate
        raise ValueError("sentence tree without a predicate")
    return subject, predicate
