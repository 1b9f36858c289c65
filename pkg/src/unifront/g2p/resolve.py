"""Pronunciation resolution: lexicon, OOV model, then POS and polyphone updates."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from ..core import decode_labels
from ..models.multitask import ModelNotLoaded, MultiTaskTagger
from ..models.seq2seq import Seq2SeqModel, beam_decode
from .lexicon import HomographTable, Lexicon, PhonemeSeq

log = logging.getLogger(__name__)

DEFAULT_POS = "NOUN"

LETTER_NAMES = {
    "a": "EY", "b": "B IY", "c": "S IY", "d": "D IY", "e": "IY", "f": "EH F", "g": "JH IY",
    "h": "EY CH", "i": "AY", "j": "JH EY", "k": "K EY", "l": "EH L", "m": "EH M", "n": "EH N",
    "o": "OW", "p": "P IY", "q": "K Y UW", "r": "AA R", "s": "EH S", "t": "T IY", "u": "Y UW",
    "v": "V IY", "w": "D AH B AH L Y UW", "x": "EH K S", "y": "W AY", "z": "Z IY",
    "0": "Z IH R OW", "1": "W AH N", "2": "T UW", "3": "TH R IY", "4": "F AO R",
    "5": "F AY V", "6": "S IH K S", "7": "S EH V AH N", "8": "EY T", "9": "N AY N",
}

PROVENANCES = ("lexicon", "oov", "pos-updated", "polyphone-updated", "fallback")


@dataclass(frozen=True)
class WordPronunciation:
    word: str
    phonemes: PhonemeSeq
    provenance: str
    variant: int | None = None


def letter_names(word: str) -> PhonemeSeq:
    """Spell the word out; a word with no letters or digits becomes a pause."""
    out: list[str] = []
    for ch in word.lower():
        out += LETTER_NAMES.get(ch, "").split()
    return tuple(out) or ("SIL",)


def g2p_oov(
    word: str,
    model: Seq2SeqModel | None,
    k: int = 3,
    diagnostics: list[str] | None = None,
) -> PhonemeSeq:
    """Top beam-search hypothesis of the OOV model for a lowercased word."""
    if model is None:
        raise ModelNotLoaded("OOV phonemization needs a trained G2P model")
    chars = model.chars
    lowered = word.lower()
    kept = [c for c in lowered if c in chars]
    if len(kept) != len(lowered):
        dropped = "".join(sorted(set(lowered) - set(kept)))
        msg = f"dropped characters {dropped!r} from {word!r}"
        log.warning(msg)
        if diagnostics is not None:
            diagnostics.append(msg)
    if not kept:
        raise ValueError(f"{word!r} has no characters the G2P model can read")
    hyps = beam_decode(chars.encode(kept), model, beam=k)
    return tuple(model.phonemes.decode(hyps[0][0]))


def pos_tag(words: Sequence[str], model: MultiTaskTagger | None) -> list[str]:
    """One POS category per word: the category of its covering span, else NOUN."""
    if model is None:
        raise ModelNotLoaded("POS tagging needs a trained tagger")
    out = [DEFAULT_POS] * len(words)
    for span in decode_labels(model.tag("pos", words), model.pos_inventory):
        for i in range(span.start, span.end):
            out[i] = span.category
    return out


def polyphone_classify(
    words: Sequence[str], index: int, model: MultiTaskTagger | None, homographs: HomographTable
) -> int:
    """Class id among the target word's registered pronunciation labels."""
    entry = homographs.get(words[index])
    if entry is None or not entry.polyphone:
        raise KeyError(f"{words[index]!r} is not a registered polyphone")
    if len(entry.polyphone) == 1:
        return 0
    if model is None:
        raise ModelNotLoaded("polyphone classification needs a trained tagger")
    return model.classify_polyphone([w.lower() for w in words], index, len(entry.polyphone))


def resolve_pronunciations(
    words: Sequence[str],
    lexicon: Lexicon,
    homographs: HomographTable,
    oov_model: Seq2SeqModel | None = None,
    tagger: MultiTaskTagger | None = None,
    *,
    beam: int = 3,
    pos: Sequence[str] | None = None,
    use_oov: bool = True,
    use_pos: bool = True,
    use_polyphone: bool = True,
    diagnostics: list[str] | None = None,
) -> list[WordPronunciation]:
    """Pick one pronunciation per word.

    Lexicon words take their default variant, other words go through the OOV
    model. Registered homographs are then updated from the POS tags and
    finally from the polyphone classifier, whose choice wins. A word that no
    path can handle is spelled out letter by letter (provenance ``fallback``).
    ``pos`` may carry precomputed tags; the ``use_*`` switches drop stages.
    """
    diag = diagnostics if diagnostics is not None else []
    if pos is None and use_pos and tagger is not None and any(homographs.get(w) for w in words):
        pos = pos_tag(words, tagger)
    out = []
    for i, word in enumerate(words):
        variants = lexicon.lookup(word)
        if variants is not None:
            result = WordPronunciation(word, variants[0].phonemes, "lexicon", 0)
        else:
            result = _oov_or_fallback(word, oov_model if use_oov else None, beam, diag)
            out.append(result)
            continue
        entry = homographs.get(word)
        if entry is not None:
            if use_pos and pos is not None and pos[i] in entry.pos:
                v = entry.pos[pos[i]]
                result = WordPronunciation(word, variants[v].phonemes, "pos-updated", v)
            if use_polyphone and entry.polyphone:
                try:
                    cls = polyphone_classify(words, i, tagger, homographs)
                except ModelNotLoaded as exc:
                    diag.append(f"{word!r}: {exc}")
                else:
                    v = entry.polyphone[cls][1]
                    result = WordPronunciation(word, variants[v].phonemes, "polyphone-updated", v)
        out.append(result)
    return out


def _oov_or_fallback(word: str, model: Seq2SeqModel | None, beam: int, diag: list[str]) -> WordPronunciation:
    if model is not None:
        try:
            seq = g2p_oov(word, model, beam, diag)
        except ValueError as exc:
            diag.append(str(exc))
        else:
            if seq:
                return WordPronunciation(word, seq, "oov")
            diag.append(f"OOV model produced no phonemes for {word!r}")
    else:
        diag.append(f"{word!r} is not in the lexicon and no OOV model is active")
    return WordPronunciation(word, letter_names(word), "fallback")


