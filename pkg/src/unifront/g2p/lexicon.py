"""CMUdict-format pronunciation lexicon and the homograph table."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from ..core import CategoryInventory, PhonemeInventory, data_path, load_phoneme_inventory, load_pos_inventory

PhonemeSeq = tuple[str, ...]

_VARIANT = re.compile(r"^(.+?)(?:\((\d+)\))?$")


class LexiconError(ValueError):
    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Pronunciation:
    phonemes: PhonemeSeq
    variant: int

    def __str__(self) -> str:
        return " ".join(self.phonemes)


def convert_stress(symbol: str, keep_stress: bool) -> str:
    """Map a CMUdict symbol onto the phoneme inventory.

    Without ``keep_stress`` every stress digit goes; with it primary and
    secondary stress stay and unstressed vowels are written bare.
    """
    if symbol[-1:].isdigit():
        if not keep_stress or symbol[-1] == "0":
            return symbol[:-1]
    return symbol


@dataclass
class Lexicon:
    entries: dict[str, list[Pronunciation]] = field(default_factory=dict)
    source: str = ""

    @classmethod
    def load(
        cls,
        path: str | Path | None = None,
        phonemes: PhonemeInventory | None = None,
        keep_stress: bool = False,
    ) -> "Lexicon":
        path = Path(path) if path is not None else data_path("lexicon.dict")
        phonemes = phonemes or load_phoneme_inventory()
        lex = cls(source=str(path))
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            line = line.split(" #", 1)[0].strip()
            if not line or line.startswith(";;;"):
                continue
            head, *symbols = line.split()
            if not symbols:
                raise LexiconError(path, lineno, f"no phonemes for {head!r}")
            word = _VARIANT.match(head).group(1).lower()
            seq = tuple(convert_stress(s, keep_stress) for s in symbols)
            bad = [s for s in seq if s not in phonemes]
            if bad:
                raise LexiconError(path, lineno, f"unknown phonemes {bad} for {head!r}")
            variants = lex.entries.setdefault(word, [])
            variants.append(Pronunciation(seq, len(variants)))
        return lex

    def lookup(self, word: str) -> list[Pronunciation] | None:
        """All pronunciations of ``word``, default first; ``None`` when absent."""
        return self.entries.get(word.lower())

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def lexicon_lookup(word: str, lexicon: Lexicon) -> list[Pronunciation] | None:
    return lexicon.lookup(word)


@dataclass(frozen=True)
class HomographEntry:
    pos: Mapping[str, int]
    polyphone: tuple[tuple[str, int], ...]

    @property
    def polyphone_labels(self) -> list[str]:
        return [label for label, _ in self.polyphone]

    def class_of(self, label: str) -> int:
        return self.polyphone_labels.index(label)


@dataclass
class HomographTable:
    entries: dict[str, HomographEntry] = field(default_factory=dict)

    @classmethod
    def load(
        cls,
        path: str | Path | None = None,
        lexicon: Lexicon | None = None,
        pos_inventory: CategoryInventory | None = None,
    ) -> "HomographTable":
        """Read ``WORD <tab> POS=CAT:variant,... <tab> POLY=label:variant,...``.

        A split written as ``-`` is empty. With a lexicon, every variant must
        exist in the word's entry list.
        """
        path = Path(path) if path is not None else data_path("homographs.tsv")
        pos_inventory = pos_inventory or load_pos_inventory()
        table = cls()
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise LexiconError(path, lineno, f"expected 3 tab-separated fields, got {len(fields)}")
            word = fields[0].strip().lower()
            pos = dict(_parse_split(path, lineno, fields[1], "POS"))
            poly = tuple(_parse_split(path, lineno, fields[2], "POLY"))
            for cat in pos:
                if cat not in pos_inventory:
                    raise LexiconError(path, lineno, f"unknown POS category {cat!r}")
            if len({label for label, _ in poly}) != len(poly):
                raise LexiconError(path, lineno, "duplicate polyphone label")
            if lexicon is not None:
                known = lexicon.lookup(word)
                if known is None:
                    raise LexiconError(path, lineno, f"{word!r} is not in the lexicon")
                for v in [*pos.values(), *(v for _, v in poly)]:
                    if v >= len(known):
                        raise LexiconError(path, lineno, f"{word!r} has no variant {v}")
            table.entries[word] = HomographEntry(pos, poly)
        return table

    def get(self, word: str) -> HomographEntry | None:
        return self.entries.get(word.lower())

    def is_polyphone(self, word: str) -> bool:
        entry = self.get(word)
        return entry is not None and bool(entry.polyphone)

    @property
    def max_classes(self) -> int:
        return max((len(e.polyphone) for e in self.entries.values()), default=1)


def _parse_split(path, lineno: int, field_text: str, prefix: str) -> list[tuple[str, int]]:
    text = field_text.strip()
    if not text.startswith(prefix + "="):
        raise LexiconError(path, lineno, f"expected {prefix}=...")
    body = text[len(prefix) + 1 :]
    if body == "-":
        return []
    out = []
    for item in body.split(","):
        key, sep, value = item.partition(":")
        if not sep or not key or not value.isdigit():
            raise LexiconError(path, lineno, f"bad {prefix} item {item!r}")
        out.append((key, int(value)))
    return out
