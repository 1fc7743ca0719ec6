from hypothesis import given, settings
from hypothesis import strategies as st

from expando.grammar import (
    CNS,
    NS,
    PS,
    SUBJECT,
    SyntaxTree,
    builtin_rules,
    has_subject,
    parse_candidates,
    split_subject_predicate,
)
from expando.lexicon import Category
from expando.planner import categorize_keywords, detect_type, grammar_input

N = Category.NOUN
PRON = Category.PRONOUN
V = Category.VERB
ADJ = Category.ADJECTIVE
ADV = Category.ADVERB
DET = Category.DETERMINER
PREP = Category.PREPOSITION
CONJ = Category.CONJUNCTION
PROP = Category.PROPER_NOUN


def _toks(*cats):
    return [(f"w{i}", {c}) for i, c in enumerate(cats)]


def test_accepts_fig1_category_sequence():
    assert parse_candidates(_toks(PRON, V, PREP, DET, N))


def test_accepts_subjectless_imperative_shape():
    trees = parse_candidates(_toks(V, PREP, DET, N))
    assert trees
    assert not any(has_subject(t) for t in trees)


def test_rejects_lone_preposition():
    assert parse_candidates(_toks(PREP)) == []


def test_empty_input_gives_no_trees():
    assert parse_candidates([]) == []


def test_fig1_two_structures_with_slots():
    tokens = [("she", {PRON}), ("look", {V, N}), ("picture", {N})]
    trees = parse_candidates(tokens)
    assert len(trees) >= 2
    slot_profiles = []
    for tree in trees:
        kinds = sorted(n.slot_kind for n in tree.slot_nodes())
        slot_profiles.append((kinds, tree.find(PS) is not None))
    assert (["det", "prep"], True) in slot_profiles  # PS variant
    assert (["det"], False) in slot_profiles  # direct object variant


def test_cns_subject_with_unbound_conjunction():
    tokens = [("caregiver", {N}), ("i", {PRON}), ("eat", {V}), ("apples", {N})]
    trees = parse_candidates(tokens)
    cns_trees = [t for t in trees if t.find(CNS) is not None]
    assert cns_trees
    tree = cns_trees[0]
    assert "conj" in {n.slot_kind for n in tree.slot_nodes()}
    subject, _ = split_subject_predicate(tree)
    assert subject.label == CNS


def test_split_fig1_tree():
    tokens = [("she", {PRON}), ("look", {V}), ("picture", {N})]
    trees = parse_candidates(tokens)
    with_ps = next(t for t in trees if t.find(PS) is not None)
    subject, predicate = split_subject_predicate(with_ps)
    assert subject.label == NS
    assert [l.token_index for l in subject.bound_leaves()] == [0]
    assert predicate.find(PS) is not None


def test_split_imperative_tree():
    (tree,) = parse_candidates(_toks(V, N))[:1]
    subject, predicate = split_subject_predicate(tree)
    assert subject is None
    assert predicate.label == "PREDICATE"


def test_split_cns_subject_spans_conjunction():
    tokens = [("caregiver", {N}), ("i", {PRON}), ("eat", {V})]
    trees = [t for t in parse_candidates(tokens) if t.find(CNS)]
    subject, _ = split_subject_predicate(trees[0])
    # the CNS subject holds both NS components plus the conjunction slot
    ns_children = [c for c in subject.children if c.label == NS]
    slot_children = [c for c in subject.children if c.slot_kind == "conj"]
    assert len(ns_children) == 2
    assert len(slot_children) == 1
    assert [l.token_index for l in subject.bound_leaves()] == [0, 1]


def test_parse_is_deterministic():
    tokens = [("she", {PRON}), ("look", {V, N}), ("picture", {N})]
    assert parse_candidates(tokens) == parse_candidates(tokens)


def test_builtin_rules_shape():
    rules = builtin_rules()
    lhs = {r.lhs for r in rules}
    assert lhs == {"SENTENCE", "SUBJECT", "PREDICATE", "NS", "CNS", "PS", "ADJS", "ADVS"}


def _assert_leaf_order(tree: SyntaxTree, n_tokens: int):
    indexes = [leaf.token_index for leaf in tree.bound_leaves()]
    assert indexes == list(range(n_tokens))


def _assert_depth_bound(tree: SyntaxTree):
    def walk(node, inside_ps):
        if node.label == PS:
            assert not inside_ps, "PS nested inside a PS-contained NS"
            inside_ps = True
        for child in node.children:
            walk(child, inside_ps)

    walk(tree, False)


_cats = st.sampled_from([N, PRON, V, ADJ, ADV, DET, PREP, CONJ, PROP])


@settings(max_examples=60, deadline=None)
@given(st.lists(_cats, min_size=1, max_size=6))
def test_leaf_order_and_depth_bound(cats):
    tokens = _toks(*cats)
    for tree in parse_candidates(tokens):
        _assert_leaf_order(tree, len(tokens))
        _assert_depth_bound(tree)


TABLE3_INPUTS = [
    ["something", "be", "not", "right"],
    ["where", "my", "glasses", "be", "?"],
    ["dinner", "be", "good", "last", "night"],
    ["appreciate", "your", "help", "concern"],
    ["live", "yellow", "house"],
    ["how much", "stamps", "be", "these", "days", "?"],
    ["final", "grades", "be", "available", "after", "class", "today", "?"],
]


def test_table3_inputs_all_parse(seed_lexicon):
    for keywords in TABLE3_INPUTS:
        _, remaining = detect_type(keywords)
        tokens = categorize_keywords(remaining, seed_lexicon)
        assert parse_candidates(grammar_input(tokens)), keywords


def test_parse_limit_truncates_deterministically():
    ambiguous = {N, V, ADJ, ADV, DET, PREP, CONJ, PRON, PROP}
    tokens = [(f"w{i}", set(ambiguous)) for i in range(6)]
    full = parse_candidates(tokens)
    capped = parse_candidates(tokens, limit=10)
    assert len(capped) == 10
    assert capped == full[:10]


def test_double_object_shape_parses():
    # pronoun + noun after the verb: the ditransitive tree must exist
    tokens = _toks(PRON, V, PRON, N, ADV)
    trees = parse_candidates(tokens)
    def object_labels(tree):
        _, predicate = split_subject_predicate(tree)
        return [c.label for c in predicate.children if c.label in (NS, CNS)]
    assert any(object_labels(t) == [NS, NS] for t in trees)
