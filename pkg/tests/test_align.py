import pytest
from hypothesis import given
from hypothesis import strategies as st

from unifront.align import HEADER, build_normative_label, format_label, parse_label
from unifront.core import ProsodyLevel


def test_single_word():
    rows = build_normative_label(["hello"], [("HH", "EH", "L", "OW")], [3], ["INTJ"], ["lexicon"])
    assert [r.phoneme for r in rows] == ["HH", "EH", "L", "OW"]
    assert [int(r.prosody) for r in rows] == [0, 0, 0, 3]
    assert [r.ph_idx for r in rows] == [0, 1, 2, 3]


def test_empty_sentence():
    assert build_normative_label([], [], [], []) == []


def test_two_words():
    rows = build_normative_label(["ab", "cde"], [("A", "B"), ("C", "D", "E")], [1, 3], ["X", "Y"])
    assert len(rows) == 5
    assert [int(r.prosody) for r in rows] == [0, 1, 0, 0, 3]
    assert [r.word_idx for r in rows] == [0, 0, 1, 1, 1]


def test_errors():
    with pytest.raises(ValueError):
        build_normative_label(["a"], [("A",)], [0, 1], ["X"])
    with pytest.raises(ValueError):
        build_normative_label(["a"], [()], [0], ["X"])


sentences = st.lists(
    st.tuples(
        st.sampled_from(["a", "bc", "d'e"]),
        st.lists(st.sampled_from(["AA", "B", "K", "SIL"]), min_size=1, max_size=5),
        st.integers(0, 3),
        st.sampled_from(["NOUN", "VERB"]),
    ),
    max_size=8,
)


@given(sentences)
def test_alignment_invariants(words):
    ws, phs, levels, pos = (list(x) for x in zip(*words)) if words else ([], [], [], [])
    rows = build_normative_label(ws, phs, levels, pos)
    assert len(rows) == sum(len(p) for p in phs)
    regrouped = [[r.phoneme for r in rows if r.word_idx == i] for i in range(len(ws))]
    assert regrouped == [list(p) for p in phs]
    assert sum(r.prosody != 0 for r in rows) == sum(lv > 0 for lv in levels)
    for r in rows:
        if r.ph_idx != len(phs[r.word_idx]) - 1:
            assert r.prosody == ProsodyLevel.NONE
        else:
            assert r.prosody == levels[r.word_idx]


@given(st.lists(sentences, max_size=4))
def test_tsv_round_trip(blocks):
    built = []
    for words in blocks:
        ws, phs, levels, pos = (list(x) for x in zip(*words)) if words else ([], [], [], [])
        built.append(build_normative_label(ws, phs, levels, pos, ["lexicon"] * len(ws)))
    text = format_label(built)
    assert parse_label(text) == built
    if built:
        assert text.startswith(HEADER + "\n") and text.endswith("\n\n")
    else:
        assert text == ""


def test_tsv_layout():
    rows = build_normative_label(["hi"], [("HH", "AY")], [3], ["INTJ"], ["lexicon"])
    assert format_label([rows]) == (
        "word_idx\tword\tphoneme\tph_idx\tprosody\tpos\tprovenance\n"
        "0\thi\tHH\t0\t#0\tINTJ\tlexicon\n"
        "0\thi\tAY\t1\t#3\tINTJ\tlexicon\n"
        "\n"
    )
