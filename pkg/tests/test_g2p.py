import pytest

from unifront.g2p import (
    HomographTable,
    Lexicon,
    LexiconError,
    convert_stress,
    g2p_oov,
    letter_names,
    lexicon_lookup,
    polyphone_classify,
    pos_tag,
    resolve_pronunciations,
)
from unifront.models import ModelNotLoaded


def test_lexicon_lookup(lexicon):
    assert lexicon_lookup("hello", lexicon)[0].phonemes == ("HH", "EH", "L", "OW")
    assert lexicon_lookup("Hello", lexicon)[0].phonemes == ("HH", "EH", "L", "OW")
    lead = lexicon_lookup("lead", lexicon)
    assert [p.phonemes for p in lead] == [("L", "IY", "D"), ("L", "EH", "D")]
    assert lexicon_lookup("zzzzxq", lexicon) is None


def test_stress_conversion(phonemes):
    assert convert_stress("EH1", False) == "EH"
    assert convert_stress("EH1", True) == "EH1"
    assert convert_stress("AH0", True) == "AH"
    assert convert_stress("K", True) == "K"
    stressed = Lexicon.load(phonemes=phonemes, keep_stress=True)
    assert stressed.lookup("hello")[0].phonemes == ("HH", "EH", "L", "OW1")


def test_lexicon_errors(tmp_path, phonemes):
    bad = tmp_path / "bad.dict"
    bad.write_text("cat  K AE T\ndog  D QQ G\n")
    with pytest.raises(LexiconError, match=":2:"):
        Lexicon.load(bad, phonemes)
    bad.write_text("cat\n")
    with pytest.raises(LexiconError, match=":1:"):
        Lexicon.load(bad, phonemes)


@pytest.mark.parametrize(
    "line, message",
    [
        ("lead\tPOS=VERB:0\tPOLY=a:0,a:1", "duplicate"),
        ("lead\tPOS=NOTATAG:0\tPOLY=-", "unknown POS"),
        ("lead\tPOS=VERB:5\tPOLY=-", "no variant"),
        ("zzzzxq\tPOS=VERB:0\tPOLY=-", "not in the lexicon"),
        ("lead\tPOS=VERB:0", "3 tab-separated"),
        ("lead\tPOS=VERB\tPOLY=-", "bad POS item"),
    ],
)
def test_homograph_errors(tmp_path, lexicon, pos_inv, line, message):
    path = tmp_path / "h.tsv"
    path.write_text("# header\n" + line + "\n")
    with pytest.raises(LexiconError, match=message):
        HomographTable.load(path, lexicon, pos_inv)


def test_bundled_homographs(homographs):
    assert homographs.is_polyphone("lead")
    assert not homographs.is_polyphone("read")
    assert homographs.get("lead").polyphone_labels == ["guide", "metal"]
    assert homographs.max_classes == 2


def test_letter_names():
    assert letter_names("dvd") == ("D", "IY", "V", "IY", "D", "IY")
    assert letter_names("--") == ("SIL",)


def test_g2p_oov_shape(oov_model, phonemes):
    seq = g2p_oov("wombat", oov_model)
    assert seq == ("W", "AA", "M", "B", "AE", "T")
    assert all(p in phonemes for p in seq)
    assert g2p_oov("WOMBAT", oov_model, k=1) == seq


def test_g2p_oov_drops_unknown_characters(oov_model):
    diags: list[str] = []
    assert g2p_oov("womébat", oov_model, diagnostics=diags) == g2p_oov("wombat", oov_model)
    assert len(diags) == 1
    with pytest.raises(ValueError):
        g2p_oov("éé", oov_model)
    with pytest.raises(ModelNotLoaded):
        g2p_oov("cat", None)


def test_pos_tag(tagger):
    assert pos_tag(["i", "read", "books"], tagger) == ["PRON", "VERB", "NOUN"]
    assert pos_tag([], tagger) == []
    with pytest.raises(ModelNotLoaded):
        pos_tag(["x"], None)


def test_polyphone_classify(tagger, homographs):
    entry = homographs.get("lead")
    assert polyphone_classify(["the", "lead", "pipe"], 1, tagger, homographs) == entry.class_of("metal")
    assert polyphone_classify(["take", "the", "lead"], 2, tagger, homographs) == entry.class_of("guide")
    with pytest.raises(KeyError):
        polyphone_classify(["the", "cat"], 1, tagger, homographs)
    with pytest.raises(KeyError):
        polyphone_classify(["i", "read"], 1, tagger, homographs)


def test_resolve_provenance(lexicon, homographs, oov_model, tagger):
    out = resolve_pronunciations(["my", "wombat", "likes", "jazz"], lexicon, homographs, oov_model, tagger)
    assert [w.provenance for w in out] == ["lexicon", "oov", "lexicon", "oov"]
    assert out[1].phonemes == ("W", "AA", "M", "B", "AE", "T")
    out = resolve_pronunciations(["i", "read", "books"], lexicon, homographs, oov_model, tagger)
    assert out[1].provenance == "pos-updated"
    assert out[1].phonemes == ("R", "IY", "D")
    out = resolve_pronunciations(["the", "lead", "pipe"], lexicon, homographs, oov_model, tagger)
    assert out[1].provenance == "polyphone-updated"
    assert out[1].phonemes == ("L", "EH", "D")


def test_polyphone_overrides_pos(lexicon, homographs, oov_model, tagger):
    # POS alone maps VERB -> L IY D; the classifier runs last and its choice stands.
    words = ["the", "lead", "pipe"]
    forced = resolve_pronunciations(words, lexicon, homographs, oov_model, tagger, pos=["DET", "VERB", "NOUN"])
    no_poly = resolve_pronunciations(
        words, lexicon, homographs, oov_model, tagger, pos=["DET", "VERB", "NOUN"], use_polyphone=False
    )
    assert no_poly[1].phonemes == ("L", "IY", "D") and no_poly[1].provenance == "pos-updated"
    assert forced[1].phonemes == ("L", "EH", "D") and forced[1].provenance == "polyphone-updated"


def test_fallback_without_models(lexicon, homographs):
    diags: list[str] = []
    out = resolve_pronunciations(["wombat", "lead"], lexicon, homographs, diagnostics=diags)
    assert out[0].provenance == "fallback"
    assert out[1].provenance == "lexicon" and out[1].phonemes == ("L", "IY", "D")
    assert len(diags) == 2


def test_symbols_stay_in_inventory(lexicon, homographs, oov_model, tagger, phonemes):
    words = "my wombat likes jazz and the lead pipe zoin qwrtx 42".split()
    for w in resolve_pronunciations(words, lexicon, homographs, oov_model, tagger):
        assert w.phonemes and all(p in phonemes for p in w.phonemes)


def test_single_character_word(oov_model):
    assert len(g2p_oov("a", oov_model)) > 0


def test_routing_contract(lexicon, homographs, oov_model, tagger):
    out = resolve_pronunciations(["hello", "zzzzxq"], lexicon, homographs, oov_model, tagger)
    assert [w.provenance for w in out] == ["lexicon", "oov"]


def test_no_homographs_gives_lexicon_defaults(lexicon, homographs, oov_model, tagger):
    words = "the quick brown fox jumps".split()
    out = resolve_pronunciations(words, lexicon, homographs, oov_model, tagger)
    assert [w.phonemes for w in out] == [lexicon.lookup(w)[0].phonemes for w in words]
    assert {w.provenance for w in out} == {"lexicon"}


def test_single_variant_polyphone_is_class_zero(tmp_path, lexicon, pos_inv, tagger):
    path = tmp_path / "h.tsv"
    path.write_text("hello\tPOS=-\tPOLY=greeting:0\n")
    table = HomographTable.load(path, lexicon, pos_inv)
    assert polyphone_classify(["hello", "there"], 0, None, table) == 0
    assert polyphone_classify(["oh", "hello"], 1, tagger, table) == 0
