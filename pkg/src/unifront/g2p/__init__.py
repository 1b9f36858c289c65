"""Grapheme-to-phoneme conversion with homograph resolution."""

from ..metrics import g2p_wer
from .lexicon import (
    HomographEntry,
    HomographTable,
    Lexicon,
    LexiconError,
    PhonemeSeq,
    Pronunciation,
    convert_stress,
    lexicon_lookup,
)
from .resolve import (
    PROVENANCES,
    WordPronunciation,
    g2p_oov,
    letter_names,
    polyphone_classify,
    pos_tag,
    resolve_pronunciations,
)

__all__ = [
    "HomographEntry",
    "HomographTable",
    "Lexicon",
    "LexiconError",
    "PROVENANCES",
    "PhonemeSeq",
    "Pronunciation",
    "WordPronunciation",
    "convert_stress",
    "g2p_oov",
    "g2p_wer",
    "letter_names",
    "lexicon_lookup",
    "polyphone_classify",
    "pos_tag",
    "resolve_pronunciations",
]
