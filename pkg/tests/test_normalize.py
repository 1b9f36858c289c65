import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unifront.core import SpanTag, tokenize
from unifront.models import ModelNotLoaded
from unifront.tn import RuleSet, normalize, pre_handle, splice, tn_tag
from unifront.tn.verbalize import VERBALIZERS

CATEGORIES = sorted(set(VERBALIZERS) - {"PLAIN", "PUNCT"})


def test_tn_tag_needs_a_model():
    with pytest.raises(ModelNotLoaded):
        tn_tag(tokenize("hello"), None)


def test_plain_sentence_is_untouched(tagger, rules):
    assert tn_tag(tokenize("hello world"), tagger) == []
    assert normalize("hello world", tagger, rules).normalized == "hello world"


def test_tagged_spans_on_fixture_sentences(tagger):
    assert tn_tag(tokenize("i have 3 dvds"), tagger) == [SpanTag("CARDINAL", 2, 3), SpanTag("LETTERSS", 3, 4)]
    spans = tn_tag(tokenize("2 dvds and 1 dvd"), tagger)
    assert SpanTag("LETTERSS", 1, 2) in spans and SpanTag("LETTERS", 4, 5) in spans


def test_normalize_fixture_sentences(tagger, rules):
    assert normalize("i have 3 dvds", tagger, rules).normalized == "i have three d v ds"
    assert normalize("call 911", tagger, rules).normalized == "call nine one one"
    assert normalize("she counted 911 votes", tagger, rules).normalized == "she counted nine hundred and eleven votes"
    assert normalize("", tagger, rules).normalized == ""


def test_rule_decides_the_911_reading(rules):
    text = "call 911"
    tokens = tokenize(text)
    model_says = [SpanTag("CARDINAL", 1, 2)]
    assert splice(text, tokens, pre_handle(text, tokens, model_says, rules), rules).normalized == "call nine one one"
    assert splice(text, tokens, model_says, RuleSet()).normalized == "call nine hundred and eleven"


def test_provenance_records_each_replacement(rules):
    text = "I bought an iPhone yesterday."
    tokens = tokenize(text)
    result = splice(text, tokens, pre_handle(text, tokens, [], rules), rules)
    assert result.normalized == "I bought an i phone yesterday ."
    (rep,) = result.replacements
    assert rep.source == "iPhone" and rep.origin == "hotword" and rep.words == ("i", "phone")
    assert result.words[rep.out_start : rep.out_end] == ["i", "phone"]


def test_fallback_is_reported_not_raised(rules):
    text = "abc"
    result = splice(text, tokenize(text), [SpanTag("CARDINAL", 0, 1)], rules)
    assert result.normalized == "a b c"
    assert len(result.diagnostics()) == 1


@st.composite
def sentence_with_spans(draw):
    words = draw(st.lists(st.sampled_from(["a", "B", "12", "$", "x1", ".", "7", "dvds", "iPhone", "-"]), max_size=10))
    text = " ".join(words)
    n = len(tokenize(text))
    spans, i = [], 0
    while i < n:
        if draw(st.booleans()):
            j = draw(st.integers(i + 1, n))
            spans.append(SpanTag(draw(st.sampled_from(CATEGORIES)), i, j))
            i = j
        else:
            i += 1
    return text, spans


@settings(max_examples=300, deadline=None)
@given(sentence_with_spans())
def test_splice_preserves_outside_tokens_and_restores(case):
    text, spans = case
    tokens = tokenize(text)
    result = splice(text, tokens, spans, RuleSet())
    assert result.restore() == [t.text for t in tokens]
    inside = {i for s in spans for i in range(s.start, s.end)}
    outside = [t.text for i, t in enumerate(tokens) if i not in inside]
    replaced = {i for r in result.replacements for i in range(r.out_start, r.out_end)}
    assert [w for i, w in enumerate(result.words) if i not in replaced] == outside
    assert all(w == w.lower() for r in result.replacements for w in r.words)
