import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import TEST_DATA
from oracles import scan_tokens
from unifront.core import (
    CategoryInventory,
    PhonemeInventory,
    SpanTag,
    SymbolInventory,
    Token,
    data_path,
    decode_labels,
    encode_spans,
    load_char_inventory,
    load_phoneme_inventory,
    tokenize,
)

SENTENCES = (TEST_DATA / "tokenizer_sentences.txt").read_text(encoding="utf-8").split("\n")[:50]


@pytest.mark.parametrize("text", SENTENCES)
def test_tokenizer_matches_character_scan(text):
    assert [(t.text, t.start, t.end) for t in tokenize(text)] == scan_tokens(text)


@given(st.text(alphabet=st.sampled_from("ab1 '-.,é\t"), max_size=40))
def test_tokenizer_offsets_point_back_into_text(text):
    for tok in tokenize(text):
        assert text[tok.start : tok.end] == tok.text
        assert not any(ch.isspace() for ch in tok.text)


def test_tokenizer_examples():
    assert [t.text for t in tokenize("don't pay $5.")] == ["don't", "pay", "$", "5", "."]
    assert tokenize("") == []
    assert tokenize("   ") == []


def test_token_rejects_inconsistent_offsets():
    with pytest.raises(ValueError):
        Token("ab", 0, 3)
    with pytest.raises(ValueError):
        Token("", 2, 2)


def test_inventory_sizes(tn_inv, pos_inv):
    assert len(tn_inv.categories) == 19 and len(tn_inv) == 19 * 4 + 1 == 77
    assert len(pos_inv.categories) == 24 and len(pos_inv) == 24 * 4 + 1 == 97
    phon = load_phoneme_inventory()
    chars = load_char_inventory()
    assert len(phon.symbols) == 73
    assert len(chars.symbols) == 61
    assert {"LETTERSS", "MATH", "SCORE"} <= set(tn_inv.categories)


def test_symbol_inventory_round_trip():
    phon = load_phoneme_inventory()
    seq = ["HH", "EH", "L", "OW"]
    assert phon.decode(phon.encode(seq)) == seq
    with pytest.raises(KeyError):
        phon.encode(["XX"])
    chars = load_char_inventory()
    assert "#" in chars and "A" not in chars


def test_symbol_inventory_size_check():
    with pytest.raises(ValueError):
        PhonemeInventory(["AA", "B"], expected_size=3)
    with pytest.raises(ValueError):
        SymbolInventory(["AA", "AA"])


def test_label_ids(tn_inv):
    assert tn_inv.tag_id("O") == 0
    first = tn_inv.categories[0]
    assert [tn_inv.tag_id(f"{p}-{first}") for p in "BIES"] == [1, 2, 3, 4]
    assert tn_inv.split(0) == ("O", None)
    assert tn_inv.split(8) == ("S", tn_inv.categories[1])


def test_encode_spans_examples(tn_inv):
    tags = encode_spans(4, [SpanTag("CARDINAL", 2, 3), SpanTag("LETTERSS", 3, 4)], tn_inv)
    assert tags[:2] == [0, 0]
    assert tn_inv.split(tags[2]) == ("S", "CARDINAL")
    assert tn_inv.split(tags[3]) == ("S", "LETTERSS")
    assert encode_spans(0, [], tn_inv) == []
    multi = encode_spans(3, [SpanTag("DATE", 0, 3)], tn_inv)
    assert [tn_inv.split(t)[0] for t in multi] == ["B", "I", "E"]


def test_encode_spans_errors(tn_inv):
    with pytest.raises(ValueError):
        encode_spans(3, [SpanTag("NOPE", 0, 1)], tn_inv)
    with pytest.raises(ValueError):
        encode_spans(3, [SpanTag("DATE", 0, 2), SpanTag("TIME", 1, 3)], tn_inv)
    with pytest.raises(ValueError):
        encode_spans(2, [SpanTag("DATE", 1, 3)], tn_inv)
    with pytest.raises(ValueError):
        SpanTag("DATE", 2, 2)


def test_decode_repairs_ill_formed_sequences(tn_inv):
    B, I, E = (tn_inv.tag_of(p, "DATE") for p in "BIE")
    i_time = tn_inv.tag_of("I", "TIME")
    # An I with no open span becomes a single-token span.
    assert decode_labels([0, I, 0], tn_inv) == [SpanTag("DATE", 1, 2)]
    # An open span cut off by O ends at its last token.
    assert decode_labels([B, I, 0], tn_inv) == [SpanTag("DATE", 0, 2)]
    # A category switch closes the open span.
    assert decode_labels([B, i_time, E], tn_inv) == [SpanTag("DATE", 0, 1), SpanTag("TIME", 1, 2), SpanTag("DATE", 2, 3)]
    assert decode_labels([], tn_inv) == []


@st.composite
def span_layouts(draw, categories):
    n = draw(st.integers(0, 12))
    spans, i = [], 0
    while i < n:
        if draw(st.booleans()):
            length = draw(st.integers(1, n - i))
            spans.append(SpanTag(draw(st.sampled_from(categories)), i, i + length))
            i += length
        else:
            i += 1
    return n, spans


_TN = CategoryInventory.from_config(data_path("tn_categories.ini"))


@settings(max_examples=300)
@given(span_layouts(list(_TN.categories)))
def test_bies_round_trip(layout):
    n, spans = layout
    tags = encode_spans(n, spans, _TN)
    assert len(tags) == n
    assert decode_labels(tags, _TN) == spans


@settings(max_examples=300)
@given(st.lists(st.integers(0, 76), max_size=15))
def test_decode_is_total_and_spans_are_disjoint(tags):
    spans = decode_labels(tags, _TN)
    covered = [i for s in spans for i in range(s.start, s.end)]
    assert len(covered) == len(set(covered))
    assert all(0 <= i < len(tags) for i in covered)
    # Whatever was decoded re-encodes without error.
    encode_spans(len(tags), spans, _TN)
