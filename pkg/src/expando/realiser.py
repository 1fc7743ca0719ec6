"""Surface realisation: agreement, tense, transformations, final strings.

The realiser turns a filled sentence plan into text.  The subject dictates
the verb's person and number; tense comes from time adverbs; negation and
questions use inversion for "be" and do-support otherwise; contractions are
applied from a data table.  Words missing from the lexicon (or missing a
requested form) pass through capitalised, like proper nouns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .grammar import (
    CNS,
    NS,
    SyntaxTree,
    fronted_adverbial,
    has_subject,
    parse_candidates,
    split_subject_predicate,
)
from .lexicon import (
    FUTURE,
    PAST,
    PLURAL,
    PRESENT,
    SINGULAR,
    Category,
    LexEntry,
    Lexicon,
    MissingFormError,
    inflect,
)
from .planner import (
    DECLARATIVE,
    IMPERATIVE,
    INTERROGATIVE,
    NEGATIVE,
    SentencePlan,
    SentenceType,
    Token,
    categorize_keywords,
    detect_type,
    fill_extras,
    grammar_input,
    insert_subject,
)
from .prepmodel import PrepModel

# Closed class of question adverbs the realiser fronts before the auxiliary.
WH_ADVERBS = frozenset(
    {"where", "when", "why", "how", "how much", "how many", "what time"}
)

_DO_FORMS = {(PRESENT, True): "does", (PRESENT, False): "do", (PAST, True): "did"}
FUTURE_AUXILIARY = "will"


@dataclass(frozen=True)
class AgreementFeatures:
    person: int = 1
    number: str = SINGULAR
    gender: str = "masculine"


@dataclass
class Candidate:
    """One realised output sentence with its plan and derivation trace."""

    text: str
    plan: SentencePlan
    trace: list[str] = field(default_factory=list)

    @property
    def score(self) -> float:
        return self.plan.score


@dataclass
class ExpandResult:
    candidates: list[Candidate]
    diagnostics: list[str] = field(default_factory=list)


def _component_features(ns: SyntaxTree, tokens: Sequence[Token]) -> AgreementFeatures:
    """Features contributed by one NS (head noun, pronoun, or proper noun)."""
    for leaf in ns.bound_leaves():
        label = leaf.label
        tok = tokens[leaf.token_index]
        if label == Category.PRONOUN.value:
            entry = tok.entry(Category.PRONOUN)
            feats = tok.features(Category.PRONOUN)
            person = feats.get("person") or (entry.person if entry else None) or 3
            gender = feats.get("gender") or (entry.gender if entry else None)
            return AgreementFeatures(
                person=person,
                number=feats.get("number") or SINGULAR,
                gender=gender or "masculine",
            )
        if label == Category.NOUN.value:
            feats = tok.features(Category.NOUN)
            return AgreementFeatures(
                person=3, number=feats.get("number") or SINGULAR
            )
        if label == Category.PROPER_NOUN.value:
            return AgreementFeatures(person=3)
    return AgreementFeatures()


def derive_agreement(
    subject: SyntaxTree | None, tokens: Sequence[Token]
) -> AgreementFeatures:
    """Person/number/gender from the subject; defaults when it is absent.

    Coordinated subjects are plural; person prefers first over second over
    third across components; gender is feminine only when every component
    is feminine.
    """
    if subject is None:
        return AgreementFeatures()
    if subject.label == CNS:
        parts = [
            _component_features(child, tokens)
            for child in subject.children
            if child.label == NS
        ]
        persons = {p.person for p in parts}
        person = 1 if 1 in persons else (2 if 2 in persons else 3)
        genders = {p.gender for p in parts}
        gender = "feminine" if genders == {"feminine"} else "masculine"
        return AgreementFeatures(person=person, number=PLURAL, gender=gender)
    return _component_features(subject, tokens)


def derive_tense(tokens: Sequence[Token]) -> str:
    """Tense from the first time adverb or locution; present otherwise."""
    for tok in tokens:
        entry = tok.entry(Category.ADVERB)
        if entry is not None and entry.tense_hint:
            return entry.tense_hint
    return PRESENT


def _do_form(tense: str, features: AgreementFeatures) -> str:
    third_singular = features.person == 3 and features.number == SINGULAR
    if tense == PAST:
        return _DO_FORMS[(PAST, True)]
    return _DO_FORMS[(PRESENT, third_singular)]


class _Realisation:
    """Working state for realising one plan."""

    def __init__(self, plan, features, tense, lex, contractions):
        self.plan = plan
        self.features = features
        self.tense = tense
        self.lex = lex
        self.contractions = dict(contractions or {})
        self.trace: list[str] = []
        self.tokens: Sequence[Token] = plan.tokens
        self.slot_ids = {id(n): i for i, n in enumerate(plan.tree.slot_nodes())}

    # -- leaf and constituent realisation ---------------------------------

    def _proper(self, text: str) -> str:
        return text[:1].upper() + text[1:]

    def _leaf_words(self, leaf: SyntaxTree, head_number: str | None = None) -> list[str]:
        if leaf.slot_kind is not None:
            filler = self.plan.fillers.get(self.slot_ids[id(leaf)])
            return [filler] if filler else []
        tok = self.tokens[leaf.token_index]
        label = leaf.label
        if label == Category.PROPER_NOUN.value:
            self.trace.append(f"'{tok.text}' realised as proper noun")
            return [self._proper(tok.text)]
        category = Category(label)
        entry = tok.entry(category)
        if entry is None:  # pragma: no cover - tokens always match bound cats
            return [self._proper(tok.text)]
        feats = tok.features(category)
        if category == Category.DETERMINER and head_number:
            feats["number"] = head_number
        try:
            return [inflect(entry, feats)]
        except MissingFormError as exc:
            self.trace.append(f"missing form, passed through: {exc}")
            return [self._proper(tok.text)]

    def constituent(self, node: SyntaxTree | None, skip: SyntaxTree | None = None) -> list[str]:
        if node is None:
            return []
        if node.is_leaf:
            return self._leaf_words(node)
        if node.label == NS:
            return self._noun_syntagm(node)
        words: list[str] = []
        for child in node.children:
            if child is skip:
                continue
            words.extend(self.constituent(child, skip=skip))
        return words

    def _noun_syntagm(self, ns: SyntaxTree) -> list[str]:
        head_number = None
        for child in ns.children:
            if child.label == Category.NOUN.value and child.token_index is not None:
                tok = self.tokens[child.token_index]
                feats = tok.features(Category.NOUN)
                entry = tok.entry(Category.NOUN)
                head_number = feats.get("number") or (entry.number if entry else None)
        words: list[str] = []
        for child in ns.children:
            if child.is_leaf:
                words.extend(self._leaf_words(child, head_number=head_number))
            else:
                words.extend(self.constituent(child))
        return words

    # -- verb group --------------------------------------------------------

    def _verb_entry(self, predicate: SyntaxTree) -> tuple[LexEntry | None, SyntaxTree | None]:
        for child in predicate.children:
            if child.label == Category.VERB.value and child.token_index is not None:
                return self.tokens[child.token_index].entry(Category.VERB), child
        return None, None

    def _inflected_verb(self, entry: LexEntry) -> str:
        return inflect(
            entry,
            {
                "person": self.features.person,
                "number": self.features.number,
                "tense": self.tense,
            },
        )


def realise(
    plan: SentencePlan,
    features: AgreementFeatures,
    tense: str,
    lex: Lexicon,
    contractions: Mapping[str, str] | None = None,
) -> Candidate:
    """Assemble the final sentence string for a plan.

    ``contractions`` maps spelled-out word sequences to contracted forms;
    pass an empty mapping to disable contractions.
    """
    state = _Realisation(plan, features, tense, lex, contractions)
    st: SentenceType = plan.sentence_type
    tree = plan.tree
    subject, predicate = split_subject_predicate(tree)
    mood = st.mood
    if mood == DECLARATIVE and subject is None:
        mood = IMPERATIVE
    negative = st.polarity == NEGATIVE

    state.trace.append(f"sentence type: {st.polarity} {mood}")
    state.trace.append(f"tense: {tense}")
    state.trace.append(
        "agreement: person=%d number=%s gender=%s"
        % (features.person, features.number, features.gender)
    )
    state.trace.extend(plan.notes)

    fronted = fronted_adverbial(tree)
    fronted_words = state.constituent(fronted)
    fronted_is_wh = fronted is not None and any(
        state.tokens[leaf.token_index].text in WH_ADVERBS
        for leaf in fronted.bound_leaves()
    )
    subject_words = state.constituent(subject)
    verb_entry, verb_leaf = state._verb_entry(predicate)
    rest_words: list[str] = []
    for child in predicate.children:
        if child is verb_leaf:
            continue
        rest_words.extend(state.constituent(child))

    def finite_verb() -> str:
        if verb_entry is None:
            tok = state.tokens[verb_leaf.token_index] if verb_leaf else None
            return state._proper(tok.text) if tok else ""
        try:
            return state._inflected_verb(verb_entry)
        except MissingFormError as exc:
            state.trace.append(f"missing form, passed through: {exc}")
            return verb_entry.lemma

    words: list[str]
    is_be = verb_entry is not None and verb_entry.lemma == "be"
    lemma = verb_entry.lemma if verb_entry else (finite_verb() or "")

    if mood == IMPERATIVE:
        group = ["do", "not", lemma] if negative else [lemma]
        words = fronted_words + group + rest_words
    elif mood == INTERROGATIVE:
        if subject is None:
            group = ["do", "not", lemma] if negative else [lemma]
            words = fronted_words + group + rest_words
        else:
            if tense == FUTURE:
                aux, residue = FUTURE_AUXILIARY, [lemma]
            elif is_be:
                aux, residue = finite_verb(), []
            else:
                aux, residue = _do_form(tense, features), [lemma]
            post_subject: list[str] = []
            front_aux = [aux]
            if negative:
                contracted = state.contractions.get(f"{aux} not")
                if contracted:
                    front_aux = [contracted]
                    state.trace.append(f"contraction: {aux} not -> {contracted}")
                else:
                    post_subject = ["not"]
            # wh-adverbs front the question; other leading adverbs trail
            lead = fronted_words if fronted_is_wh else []
            tail = [] if fronted_is_wh else fronted_words
            words = (
                lead
                + front_aux
                + subject_words
                + post_subject
                + residue
                + rest_words
                + tail
            )
    else:  # declarative
        if negative:
            if tense == FUTURE:
                group = [FUTURE_AUXILIARY, "not", lemma]
            elif is_be:
                group = [finite_verb(), "not"]
            else:
                group = [_do_form(tense, features), "not", lemma]
        else:
            group = finite_verb().split()
        words = fronted_words + subject_words + group + rest_words

    words = [w for w in words if w]
    words = _apply_contractions(words, state.contractions, state.trace)
    words = ["I" if w == "i" else w for w in words]
    if words:
        words[0] = words[0][:1].upper() + words[0][1:]
    mark = "?" if mood == INTERROGATIVE else "."
    text = " ".join(words) + mark
    return Candidate(text=text, plan=plan, trace=state.trace)


def _apply_contractions(
    words: list[str], table: Mapping[str, str], trace: list[str]
) -> list[str]:
    if not table:
        return words
    max_n = max(len(key.split()) for key in table)
    out: list[str] = []
    i = 0
    while i < len(words):
        replaced = False
        for n in range(min(max_n, len(words) - i), 1, -1):
            joined = " ".join(words[i : i + n]).lower()
            if joined in table:
                out.append(table[joined])
                trace.append(f"contraction: {joined} -> {table[joined]}")
                i += n
                replaced = True
                break
        if not replaced:
            out.append(words[i])
            i += 1
    return out


MAX_CANDIDATE_TREES = 512


def expand(
    keywords: Sequence[str],
    lex: Lexicon,
    model: PrepModel,
    top_k: int = 5,
    contractions: bool = True,
    contraction_table: Mapping[str, str] | None = None,
    threshold: float | None = None,
) -> ExpandResult:
    """Full keyword-to-sentences pipeline, best candidates first.

    Candidates are deduplicated by final text (the higher-scored plan wins)
    and truncated to ``top_k``.  An unparseable input produces no candidates
    and a diagnostic naming the tokens that could not be structured.
    Enumeration is bounded at MAX_CANDIDATE_TREES for degenerate highly
    ambiguous inputs (unreachable from ordinary lexica).
    """
    if not keywords:
        raise ValueError("expand requires at least one keyword")
    if contraction_table is None:
        from .resources import load_contractions

        contraction_table = load_contractions()
    table = contraction_table if contractions else {}

    stype, remaining = detect_type(keywords)
    if not remaining:
        return ExpandResult([], ["no content words in input"])
    tokens = categorize_keywords(remaining, lex)
    trees = parse_candidates(grammar_input(tokens), limit=MAX_CANDIDATE_TREES)
    if not trees:
        described = ", ".join(
            "%s {%s}" % (t.text, "/".join(sorted(c.value for c in t.categories)))
            for t in tokens
        )
        return ExpandResult([], [f"no grammar structure matched: {described}"])

    work_tokens = list(tokens)
    if not any(has_subject(t) for t in trees):
        default = categorize_keywords(["i"], lex)[0]
        default.synthetic = True
        if Category.PRONOUN not in default.matches:
            # lexicon without the default pronoun: still first person singular
            default.matches[Category.PRONOUN] = (
                None,
                {"person": 1, "number": SINGULAR},
            )
        work_tokens.append(default)
        trees = insert_subject(trees, len(work_tokens) - 1)

    tense = derive_tense(tokens)
    kwargs = {} if threshold is None else {"threshold": threshold}
    plans: list[SentencePlan] = []
    for order, tree in enumerate(trees):
        for plan in fill_extras(
            tree, lex, model, work_tokens, stype, tree_order=order, **kwargs
        ):
            plan.tokens = work_tokens
            plans.append(plan)
    plans.sort(key=SentencePlan.sort_key)

    candidates: list[Candidate] = []
    seen_texts: set[str] = set()
    diagnostics: list[str] = []
    for plan in plans:
        subject, _ = split_subject_predicate(plan.tree)
        features = derive_agreement(subject, work_tokens)
        plan.subject_features = features
        plan.tense = tense
        candidate = realise(plan, features, tense, lex, table)
        if candidate.text in seen_texts:
            continue
        seen_texts.add(candidate.text)
        candidates.append(candidate)
        if len(candidates) >= top_k:
            break
    if not candidates:
        diagnostics.append("no plan survived scoring")
    return ExpandResult(candidates, diagnostics)
