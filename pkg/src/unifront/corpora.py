"""Corpus readers for every training task.

Each reader validates every line and raises :class:`CorpusError` with the
line number instead of skipping anything.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .core import CategoryInventory, CharInventory, PhonemeInventory, SpanTag, Token, encode_spans, tokenize
from .g2p.lexicon import HomographTable, PhonemeSeq, convert_stress

# Classes left untagged by the TN model: ordinary words and punctuation.
UNTAGGED_CLASSES = ("PLAIN", "PUNCT")


class CorpusError(ValueError):
    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


def _lines(path: str | Path):
    """(line number, line) pairs, skipping blank lines and ``#`` comments."""
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if line.strip() and not line.startswith("#"):
            yield lineno, line


# -- text normalization -------------------------------------------------------


@dataclass(frozen=True)
class TnExample:
    text: str
    tokens: tuple[Token, ...]
    spans: tuple[SpanTag, ...]
    reference: str

    @property
    def words(self) -> list[str]:
        return [t.text for t in self.tokens]


def read_tn_corpus(path: str | Path, inventory: CategoryInventory, class_first: bool = False) -> list[TnExample]:
    """Read the per-token ``token <tab> class <tab> verbalization`` format.

    ``<eos>`` lines end sentences, ``<self>`` keeps the token and ``sil``
    marks silent punctuation. Tokens are joined with spaces and re-tokenized;
    every class except PLAIN and PUNCT becomes a span over its tokens.
    ``class_first`` swaps the first two columns.
    """
    examples: list[TnExample] = []
    rows: list[tuple[int, str, str, str]] = []
    lineno = 0
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if fields[0] == "<eos>" or (class_first and len(fields) > 1 and fields[1] == "<eos>"):
            if rows:
                examples.append(_tn_sentence(path, rows, inventory))
            rows = []
            continue
        if len(fields) != 3:
            raise CorpusError(path, lineno, f"expected 3 tab-separated fields, got {len(fields)}")
        token, cls, verb = (fields[1], fields[0], fields[2]) if class_first else fields
        if not token.strip():
            raise CorpusError(path, lineno, "empty token")
        if cls not in inventory:
            raise CorpusError(path, lineno, f"unknown class {cls!r}")
        rows.append((lineno, token, cls, verb))
    if rows:
        raise CorpusError(path, lineno, "last sentence is not terminated by <eos>")
    return examples


def _tn_sentence(path, rows, inventory: CategoryInventory) -> TnExample:
    text = " ".join(token.strip() for _, token, _, _ in rows)
    tokens = tokenize(text)
    spans, ref = [], []
    offset = 0
    for lineno, token, cls, verb in rows:
        token = token.strip()
        start, end = offset, offset + len(token)
        offset = end + 1
        covered = [i for i, t in enumerate(tokens) if t.start >= start and t.end <= end]
        if not covered:
            raise CorpusError(path, lineno, f"token {token!r} has no word characters")
        if cls not in UNTAGGED_CLASSES:
            spans.append(SpanTag(cls, covered[0], covered[-1] + 1))
        if verb in ("<self>", "sil") or cls in UNTAGGED_CLASSES:
            ref.append(" ".join(tokens[i].text for i in covered))
        else:
            ref.append(verb)
    try:
        encode_spans(tokens, spans, inventory)
    except ValueError as exc:
        raise CorpusError(path, rows[0][0], str(exc)) from None
    return TnExample(text, tuple(tokens), tuple(spans), " ".join(ref))


# -- prosody -----------------------------------------------------------------------

_BREAK = re.compile(r"^(.*?)(?:#(\d))?$")


@dataclass(frozen=True)
class ProsodyExample:
    words: tuple[str, ...]
    levels: tuple[int, ...]


def read_prosody_corpus(path: str | Path) -> list[ProsodyExample]:
    """One sentence per line; ``word#1``..``word#3`` mark the break after a word."""
    out = []
    for lineno, line in _lines(path):
        words, levels = [], []
        for item in line.split():
            m = _BREAK.match(item)
            word, level = m.group(1), int(m.group(2) or 0)
            if not word:
                raise CorpusError(path, lineno, f"break marker without a word in {item!r}")
            if "#" in word or level > 3:
                raise CorpusError(path, lineno, f"bad prosody marker in {item!r}")
            words.append(word)
            levels.append(level)
        out.append(ProsodyExample(tuple(words), tuple(levels)))
    return out


# -- part of speech ------------------------------------------------------------------


@dataclass(frozen=True)
class PosExample:
    words: tuple[str, ...]
    spans: tuple[SpanTag, ...]

    def categories(self) -> list[str]:
        out = ["O"] * len(self.words)
        for s in self.spans:
            out[s.start : s.end] = [s.category] * (s.end - s.start)
        return out


def read_pos_corpus(path: str | Path, inventory: CategoryInventory) -> list[PosExample]:
    """One sentence per line of ``word/TAG`` items; ``New_York/PROPN`` is a two-word span."""
    out = []
    for lineno, line in _lines(path):
        words: list[str] = []
        spans = []
        for item in line.split():
            text, sep, tag = item.rpartition("/")
            if not sep or not text or not tag:
                raise CorpusError(path, lineno, f"expected word/TAG, got {item!r}")
            if tag not in inventory:
                raise CorpusError(path, lineno, f"unknown POS tag {tag!r}")
            parts = text.split("_")
            if not all(parts):
                raise CorpusError(path, lineno, f"empty word in {item!r}")
            spans.append(SpanTag(tag, len(words), len(words) + len(parts)))
            words += parts
        out.append(PosExample(tuple(words), tuple(spans)))
    return out


# -- polyphones ------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyphoneExample:
    words: tuple[str, ...]
    index: int
    label: str
    class_id: int
    num_classes: int


def read_polyphone_corpus(path: str | Path, homographs: HomographTable) -> list[PolyphoneExample]:
    """Lines of ``index <tab> label <tab> sentence`` for registered polyphones."""
    out = []
    for lineno, line in _lines(path):
        fields = line.split("\t")
        if len(fields) != 3:
            raise CorpusError(path, lineno, f"expected 3 tab-separated fields, got {len(fields)}")
        idx, label, sentence = fields
        words = sentence.split()
        if not idx.isdigit() or int(idx) >= len(words):
            raise CorpusError(path, lineno, f"target index {idx!r} out of range")
        index = int(idx)
        entry = homographs.get(words[index])
        if entry is None or not entry.polyphone:
            raise CorpusError(path, lineno, f"{words[index]!r} is not a registered polyphone")
        if label not in entry.polyphone_labels:
            raise CorpusError(path, lineno, f"{label!r} is not a label of {words[index]!r}")
        out.append(PolyphoneExample(tuple(words), index, label, entry.class_of(label), len(entry.polyphone)))
    return out


# -- grapheme to phoneme ----------------------------------------------------------------


def read_g2p_dict(
    path: str | Path,
    phonemes: PhonemeInventory,
    chars: CharInventory,
    keep_stress: bool = False,
    all_variants: bool = False,
) -> list[tuple[str, PhonemeSeq]]:
    """(word, phonemes) training pairs from a CMUdict-format file.

    Only each word's first pronunciation is kept unless ``all_variants``.
    """
    out = []
    seen = set()
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split(" #", 1)[0].strip()
        if not line or line.startswith(";;;"):
            continue
        head, *symbols = line.split()
        m = re.fullmatch(r"(.+?)(?:\((\d+)\))?", head)
        word = m.group(1).lower()
        if not symbols:
            raise CorpusError(path, lineno, f"no phonemes for {head!r}")
        if word in seen and not all_variants:
            continue
        bad_chars = sorted({c for c in word if c not in chars})
        if bad_chars:
            raise CorpusError(path, lineno, f"characters {bad_chars} outside the character inventory")
        seq = tuple(convert_stress(s, keep_stress) for s in symbols)
        bad = [s for s in seq if s not in phonemes]
        if bad:
            raise CorpusError(path, lineno, f"unknown phonemes {bad}")
        seen.add(word)
        out.append((word, seq))
    return out


def hash_split(
    pairs: Sequence[tuple[str, PhonemeSeq]], seed: int = 0, dev: float = 0.1, test: float = 0.1
) -> tuple[list, list, list]:
    """Deterministic train/dev/test split by a seeded hash of the word."""
    train_, dev_, test_ = [], [], []
    for pair in pairs:
        h = int.from_bytes(hashlib.sha256(f"{seed}:{pair[0]}".encode()).digest()[:8], "big") / 2**64
        (test_ if h < test else dev_ if h < test + dev else train_).append(pair)
    return train_, dev_, test_


def read_g2p_sentences(path: str | Path, phonemes: PhonemeInventory) -> list[list[tuple[str, PhonemeSeq]]]:
    """Gold pronunciations as ``word <tab> phonemes`` lines, blank line between sentences."""
    sentences: list[list[tuple[str, PhonemeSeq]]] = [[]]
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if line.startswith("#"):
            continue
        if not line.strip():
            if sentences[-1]:
                sentences.append([])
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0] or not fields[1].split():
            raise CorpusError(path, lineno, "expected word<TAB>phonemes")
        seq = tuple(fields[1].split())
        bad = [s for s in seq if s not in phonemes]
        if bad:
            raise CorpusError(path, lineno, f"unknown phonemes {bad}")
        sentences[-1].append((fields[0], seq))
    return [s for s in sentences if s]
