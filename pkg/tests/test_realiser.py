import pytest

from expando.grammar import parse_candidates, split_subject_predicate
from expando.lexicon import Category
from expando.planner import categorize_keywords, grammar_input
from expando.realiser import (
    AgreementFeatures,
    derive_agreement,
    derive_tense,
    expand,
)


def _subject(keywords, lex):
    tokens = categorize_keywords(keywords, lex)
    trees = parse_candidates(grammar_input(tokens))
    subject, _ = split_subject_predicate(trees[0])
    return subject, tokens


def test_agreement_cns_first_person_plural(seed_lexicon):
    subject, tokens = _subject(["caregiver", "i", "eat", "apples"], seed_lexicon)
    feats = derive_agreement(subject, tokens)
    assert feats.person == 1
    assert feats.number == "plural"


def test_agreement_defaults_without_subject():
    assert derive_agreement(None, []) == AgreementFeatures(
        person=1, number="singular", gender="masculine"
    )


def test_agreement_third_singular_feminine(seed_lexicon):
    subject, tokens = _subject(["she", "look", "picture"], seed_lexicon)
    feats = derive_agreement(subject, tokens)
    assert (feats.person, feats.number, feats.gender) == (3, "singular", "feminine")


def test_agreement_plural_noun_subject(seed_lexicon):
    subject, tokens = _subject(["grades", "be", "available"], seed_lexicon)
    feats = derive_agreement(subject, tokens)
    assert (feats.person, feats.number) == (3, "plural")


def test_tense_from_yesterday(seed_lexicon):
    tokens = categorize_keywords(["she", "look", "picture", "yesterday"], seed_lexicon)
    assert derive_tense(tokens) == "past"


def test_tense_from_fused_locution(seed_lexicon):
    tokens = categorize_keywords(["dinner", "be", "good", "last", "night"], seed_lexicon)
    assert derive_tense(tokens) == "past"


def test_tense_defaults_to_present(seed_lexicon):
    tokens = categorize_keywords(["she", "look", "picture"], seed_lexicon)
    assert derive_tense(tokens) == "present"


def test_expand_running_example(seed_lexicon, seed_model):
    result = expand(["she", "look", "picture"], seed_lexicon, seed_model)
    texts = [c.text for c in result.candidates]
    assert texts[0] == "She looks at the picture."
    assert "She looks the picture." in texts


def test_expand_negative_past(seed_lexicon, seed_model):
    result = expand(
        ["she", "look", "picture", "yesterday", "not"], seed_lexicon, seed_model
    )
    assert result.candidates[0].text == "She did not look at the picture yesterday."


def test_expand_contraction(seed_lexicon, seed_model):
    result = expand(["something", "be", "not", "right"], seed_lexicon, seed_model)
    assert result.candidates[0].text == "Something isn't right."


def test_expand_contractions_off(seed_lexicon, seed_model):
    result = expand(
        ["something", "be", "not", "right"],
        seed_lexicon,
        seed_model,
        contractions=False,
    )
    assert result.candidates[0].text == "Something is not right."
    assert all("'" not in c.text for c in result.candidates)


def test_expand_wh_question(seed_lexicon, seed_model):
    result = expand(["where", "my", "glasses", "be", "?"], seed_lexicon, seed_model)
    assert result.candidates[0].text == "Where are my glasses?"


def test_expand_table3_coordination(seed_lexicon, seed_model):
    result = expand(["appreciate", "your", "help", "concern"], seed_lexicon, seed_model)
    texts = [c.text for c in result.candidates]
    assert texts[0] == "I appreciate your help and concern."
    assert "Appreciate your help and concern." in texts  # imperative variant


def test_expand_table3_inverted_question(seed_lexicon, seed_model):
    result = expand(
        ["final", "grades", "be", "available", "after", "class", "today", "?"],
        seed_lexicon,
        seed_model,
    )
    assert result.candidates[0].text == "Are final grades available after class today?"


def test_expand_unknown_word_is_proper_noun(seed_lexicon, seed_model):
    result = expand(["rex", "eat", "apples"], seed_lexicon, seed_model)
    assert result.candidates[0].text == "Rex eats apples."
    assert any("proper noun" in step for step in result.candidates[0].trace)


def test_expand_unparseable_names_tokens(seed_lexicon, seed_model):
    result = expand(["zzzq"], seed_lexicon, seed_model)
    assert result.candidates == []
    assert any("zzzq" in d for d in result.diagnostics)


def test_expand_rejects_empty_input(seed_lexicon, seed_model):
    with pytest.raises(ValueError):
        expand([], seed_lexicon, seed_model)


def test_expand_marker_only_input(seed_lexicon, seed_model):
    result = expand(["not", "?"], seed_lexicon, seed_model)
    assert result.candidates == []
    assert result.diagnostics


def test_expand_negated_question(seed_lexicon, seed_model):
    result = expand(["something", "be", "right", "not", "?"], seed_lexicon, seed_model)
    text = result.candidates[0].text
    assert text == "Isn't something right?"


def test_expand_negated_question_without_contractions(seed_lexicon, seed_model):
    result = expand(
        ["something", "be", "right", "not", "?"],
        seed_lexicon,
        seed_model,
        contractions=False,
    )
    assert result.candidates[0].text == "Is something not right?"


def test_expand_do_support_question(seed_lexicon, seed_model):
    result = expand(["she", "look", "picture", "?"], seed_lexicon, seed_model)
    assert result.candidates[0].text == "Does she look at the picture?"


def test_expand_future_tense(seed_lexicon, seed_model):
    result = expand(["she", "look", "picture", "tomorrow"], seed_lexicon, seed_model)
    assert result.candidates[0].text == "She will look at the picture tomorrow."


def test_expand_future_negative_be(seed_lexicon, seed_model):
    result = expand(
        ["she", "be", "happy", "tomorrow", "not"], seed_lexicon, seed_model
    )
    assert result.candidates[0].text == "She will not be happy tomorrow."


def test_expand_future_question_be(seed_lexicon, seed_model):
    result = expand(
        ["she", "be", "happy", "tomorrow", "?"], seed_lexicon, seed_model
    )
    assert result.candidates[0].text == "Will she be happy tomorrow?"


def test_expand_deterministic(seed_lexicon, seed_model):
    words = ["caregiver", "i", "eat", "apples", "today"]
    first = expand(words, seed_lexicon, seed_model)
    second = expand(words, seed_lexicon, seed_model)
    assert [c.text for c in first.candidates] == [c.text for c in second.candidates]
    assert [c.score for c in first.candidates] == [c.score for c in second.candidates]


def test_expand_quoted_multiword_keyword(seed_lexicon, seed_model):
    result = expand(
        ["how much", "stamps", "be", "these", "days", "?"], seed_lexicon, seed_model
    )
    assert result.candidates[0].text == "How much are stamps these days?"


def test_expand_proper_noun_premodifiers(seed_lexicon, seed_model):
    result = expand(
        ["i", "need", "a", "new", "harry", "potter", "book"], seed_lexicon, seed_model
    )
    assert result.candidates[0].text == "I need a new Harry Potter book."


def test_candidates_capitalized_and_terminated(seed_lexicon, seed_model):
    for words in (
        ["she", "look", "picture"],
        ["live", "yellow", "house"],
        ["where", "my", "glasses", "be", "?"],
    ):
        for candidate in expand(words, seed_lexicon, seed_model).candidates:
            assert candidate.text[0].isupper()
            assert candidate.text[-1] in ".?"


def test_trace_mentions_preposition_choice(seed_lexicon, seed_model):
    result = expand(["she", "look", "picture"], seed_lexicon, seed_model)
    assert any("'at'" in step for step in result.candidates[0].trace)


def test_expand_ditransitive_reading_wins(seed_lexicon, seed_model):
    result = expand(
        ["she", "give", "me", "cookie", "yesterday"], seed_lexicon, seed_model
    )
    assert result.candidates[0].text == "She gave me the cookie yesterday."


def test_expand_imperative_variant_offered(seed_lexicon, seed_model):
    result = expand(["go", "to", "your", "room"], seed_lexicon, seed_model)
    texts = [c.text for c in result.candidates]
    assert texts[0] == "I go to your room."
    assert "Go to your room." in texts


def test_wh_adverb_fronts_other_adverbs_trail(seed_lexicon, seed_model):
    wh = expand(["where", "my", "glasses", "be", "?"], seed_lexicon, seed_model)
    assert wh.candidates[0].text.startswith("Where ")
    trailing = expand(
        ["yesterday", "she", "look", "picture", "?"], seed_lexicon, seed_model
    )
    assert trailing.candidates[0].text == "Did she look at the picture yesterday?"


def test_default_subject_without_pronoun_entry(seed_model):
    # a lexicon missing the pronoun 'i' still gets a first-person default
    from expando.lexicon import Lexicon, parse_lexicon, serialize_lexicon
    from expando.resources import load_seed_lexicon

    full = load_seed_lexicon()
    reduced = Lexicon([e for e in full.entries if e.lemma != "i"])
    result = expand(["live", "yellow", "house"], reduced, seed_model)
    assert result.candidates[0].text == "I live in the yellow house."
