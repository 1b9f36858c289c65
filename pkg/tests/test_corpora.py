import pytest

from unifront.core import SpanTag
from unifront.corpora import (
    CorpusError,
    hash_split,
    read_g2p_dict,
    read_g2p_sentences,
    read_polyphone_corpus,
    read_pos_corpus,
    read_prosody_corpus,
    read_tn_corpus,
)

from conftest import FIXTURES


def write(tmp_path, text, name="c.txt"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_tn_corpus(tn_inv):
    examples = read_tn_corpus(FIXTURES / "tn_toy.tsv", tn_inv)
    first = examples[0]
    assert first.words == ["i", "have", "3", "dvds"]
    assert first.spans == (SpanTag("CARDINAL", 2, 3), SpanTag("LETTERSS", 3, 4))
    assert first.reference == "i have three d v ds"


def test_tn_class_first(tmp_path, tn_inv):
    path = write(tmp_path, "PLAIN\tcall\t<self>\nCARDINAL\t911\tnine one one\n<eos>\t<eos>\n")
    (ex,) = read_tn_corpus(path, tn_inv, class_first=True)
    assert ex.spans == (SpanTag("CARDINAL", 1, 2),)
    assert ex.reference == "call nine one one"


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("a\tPLAIN\t<self>\nb\tNOPE\tb\n<eos>\t<eos>\n", 2),
        ("a\tPLAIN\n<eos>\t<eos>\n", 1),
        ("a\tPLAIN\t<self>\n", 1),
        ("# c\n\t\tPLAIN\t<self>\n", 2),
    ],
)
def test_tn_errors(tmp_path, tn_inv, text, lineno):
    with pytest.raises(CorpusError) as info:
        read_tn_corpus(write(tmp_path, text), tn_inv)
    assert info.value.lineno == lineno


def test_prosody_corpus(tmp_path):
    (ex,) = read_prosody_corpus(write(tmp_path, "# c\nhello#2 big world#3\n"))
    assert ex.words == ("hello", "big", "world") and ex.levels == (2, 0, 3)
    for bad in ("a#4 b\n", "x #1 b\n", "a#1#2\n"):
        with pytest.raises(CorpusError) as info:
            read_prosody_corpus(write(tmp_path, "ok#1\n" + bad))
        assert info.value.lineno == 2


def test_pos_corpus(tmp_path, pos_inv):
    (ex,) = read_pos_corpus(write(tmp_path, "we/PRON met/VERB_PAST in/ADP New_York/PROPN\n"), pos_inv)
    assert ex.words == ("we", "met", "in", "New", "York")
    assert ex.categories() == ["PRON", "VERB_PAST", "ADP", "PROPN", "PROPN"]
    for bad in ("we PRON\n", "we/XYZ\n", "a_/NOUN\n"):
        with pytest.raises(CorpusError, match=":1:"):
            read_pos_corpus(write(tmp_path, bad), pos_inv)


def test_polyphone_corpus(tmp_path, homographs):
    (ex,) = read_polyphone_corpus(write(tmp_path, "1\tmetal\tthe lead pipe\n"), homographs)
    assert (ex.index, ex.class_id, ex.num_classes) == (1, 1, 2)
    for bad in ("5\tmetal\tthe lead pipe\n", "0\tmetal\tthe lead pipe\n", "1\tgold\tthe lead pipe\n", "1\tmetal\n"):
        with pytest.raises(CorpusError, match=":1:"):
            read_polyphone_corpus(write(tmp_path, bad), homographs)


def test_g2p_dict(tmp_path, phonemes, chars):
    path = write(tmp_path, ";;; comment\nlead  L IY1 D\nlead(2)  L EH1 D\ncat  K AE1 T # note\n")
    assert read_g2p_dict(path, phonemes, chars) == [("lead", ("L", "IY", "D")), ("cat", ("K", "AE", "T"))]
    assert len(read_g2p_dict(path, phonemes, chars, all_variants=True)) == 3
    with pytest.raises(CorpusError, match=":2:"):
        read_g2p_dict(write(tmp_path, "cat  K AE T\ndog  D QQ G\n"), phonemes, chars)
    with pytest.raises(CorpusError, match=":1:"):
        read_g2p_dict(write(tmp_path, "caté  K AE T\n"), phonemes, chars)


def test_g2p_sentences(phonemes, tmp_path):
    sentences = read_g2p_sentences(FIXTURES / "g2p_ablation.tsv", phonemes)
    assert sentences[0] == [("i", ("AY",)), ("read", ("R", "IY", "D")), ("books", ("B", "UH", "K", "S"))]
    with pytest.raises(CorpusError, match=":1:"):
        read_g2p_sentences(write(tmp_path, "word\n"), phonemes)


def test_hash_split_is_deterministic_and_disjoint():
    pairs = [(f"w{i}", ("AA",)) for i in range(2000)]
    a = hash_split(pairs, seed=3)
    assert a == hash_split(pairs, seed=3)
    assert a != hash_split(pairs, seed=4)
    words = [{w for w, _ in part} for part in a]
    assert not (words[0] & words[1] or words[0] & words[2] or words[1] & words[2])
    assert sum(map(len, words)) == 2000
    assert 120 < len(a[2]) < 280
