"""Shared domain types: tokens, symbol inventories and the BIES label scheme."""

from __future__ import annotations

import configparser
import enum
import hashlib
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "Token",
    "SpanTag",
    "ProsodyLevel",
    "CategoryInventory",
    "SymbolInventory",
    "PhonemeInventory",
    "CharInventory",
    "tokenize",
    "encode_spans",
    "decode_labels",
    "data_path",
    "read_symbol_file",
    "load_tn_inventory",
    "load_pos_inventory",
    "load_phoneme_inventory",
    "load_char_inventory",
]

PAD = "<pad>"
BOS = "<s>"
EOS = "</s>"

# Words may carry inner apostrophes ("don't"); every other non-space,
# non-word character is a token of its own.
_TOKEN_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*|\S")


def data_path(name: str) -> Path:
    """Path of a file bundled in ``unifront/data``."""
    return Path(str(resources.files("unifront").joinpath("data", name)))


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.end <= self.start or len(self.text) != self.end - self.start:
            raise ValueError(f"bad token offsets for {self.text!r}: {self.start}..{self.end}")


def tokenize(text: str) -> list[Token]:
    """Split on whitespace and separate punctuation into single-character tokens.

    >>> [t.text for t in tokenize("it costs $5.")]
    ['it', 'costs', '$', '5', '.']
    """
    return [Token(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]


class ProsodyLevel(enum.IntEnum):
    NONE = 0
    WORD = 1
    PHRASE = 2
    INTONATION = 3


@dataclass(frozen=True)
class SpanTag:
    category: str
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.end <= self.start or self.start < 0:
            raise ValueError(f"empty or negative span {self.start}..{self.end}")


def read_symbol_file(path: str | Path) -> list[str]:
    """One symbol per line; blank lines and ``# ...`` comments are ignored.

    A line holding just ``#`` is the symbol itself.
    """
    symbols = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not (line.startswith("#") and len(line) > 1):
            symbols.append(line)
    return symbols


def _digest(items: Iterable[str]) -> str:
    return hashlib.sha256("\n".join(items).encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class CategoryInventory:
    """Categories combined with B/I/E/S positions plus a single outside label.

    Tag id 0 is the outside label; category ``c`` at index ``i`` owns ids
    ``4i+1 .. 4i+4`` in B, I, E, S order.
    """

    name: str
    categories: tuple[str, ...]
    other_label: str = "O"
    labels: tuple[str, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(set(self.categories)) != len(self.categories):
            raise ValueError(f"duplicate categories in {self.name}")
        labels = [self.other_label]
        for cat in self.categories:
            labels.extend(f"{p}-{cat}" for p in "BIES")
        object.__setattr__(self, "labels", tuple(labels))

    @classmethod
    def from_config(cls, path: str | Path) -> "CategoryInventory":
        parser = configparser.ConfigParser()
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
        sect = parser["inventory"]
        cats = tuple(sect["categories"].split())
        return cls(sect["name"], cats, sect.get("other", "O"))

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, category: str) -> bool:
        return category in self.categories

    def tag_id(self, label: str) -> int:
        return self.labels.index(label)

    def tag_of(self, position: str, category: str) -> int:
        return 1 + 4 * self.categories.index(category) + "BIES".index(position)

    def split(self, tag_id: int) -> tuple[str, str | None]:
        """Return ``(position, category)``; the outside label is ``("O", None)``."""
        if tag_id == 0:
            return "O", None
        i, p = divmod(tag_id - 1, 4)
        return "BIES"[p], self.categories[i]

    @property
    def digest(self) -> str:
        return _digest(self.labels)


def load_tn_inventory() -> CategoryInventory:
    inv = CategoryInventory.from_config(data_path("tn_categories.ini"))
    if len(inv.categories) != 19:
        raise ValueError(f"TN inventory must have 19 categories, got {len(inv.categories)}")
    return inv


def load_pos_inventory() -> CategoryInventory:
    inv = CategoryInventory.from_config(data_path("pos_categories.ini"))
    if len(inv.categories) != 24:
        raise ValueError(f"POS inventory must have 24 categories, got {len(inv.categories)}")
    return inv


class SymbolInventory:
    """Content symbols preceded by special markers.

    Ids ``0..len(specials)-1`` are the specials; content symbol ``i`` has id
    ``len(specials) + i``.
    """

    specials: tuple[str, ...] = (PAD,)

    def __init__(self, symbols: Sequence[str], expected_size: int | None = None):
        symbols = tuple(symbols)
        if len(set(symbols)) != len(symbols):
            raise ValueError("inventory symbols must be unique")
        if set(symbols) & set(self.specials):
            raise ValueError("special markers collide with content symbols")
        if expected_size is not None and len(symbols) != expected_size:
            raise ValueError(f"expected {expected_size} symbols, got {len(symbols)}")
        self.symbols = symbols
        self._index = {s: i + len(self.specials) for i, s in enumerate(symbols)}

    def __len__(self) -> int:
        """Total vocabulary size including the special markers."""
        return len(self.specials) + len(self.symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    @property
    def pad_id(self) -> int:
        return 0

    def id(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise KeyError(f"symbol {symbol!r} not in inventory") from None

    def encode(self, symbols: Iterable[str]) -> list[int]:
        return [self.id(s) for s in symbols]

    def decode(self, ids: Iterable[int]) -> list[str]:
        n = len(self.specials)
        return [self.symbols[i - n] for i in ids if i >= n]

    @property
    def digest(self) -> str:
        return _digest(self.specials + self.symbols)


class PhonemeInventory(SymbolInventory):
    specials = (PAD, BOS, EOS)

    @property
    def bos_id(self) -> int:
        return 1

    @property
    def eos_id(self) -> int:
        return 2


class CharInventory(SymbolInventory):
    specials = (PAD,)


def load_phoneme_inventory(path: str | Path | None = None) -> PhonemeInventory:
    return PhonemeInventory(read_symbol_file(path or data_path("phonemes.txt")), expected_size=73)


def load_char_inventory(path: str | Path | None = None) -> CharInventory:
    return CharInventory(read_symbol_file(path or data_path("chars.txt")), expected_size=61)


def encode_spans(
    tokens: Sequence[Token] | int, spans: Iterable[SpanTag], inventory: CategoryInventory
) -> list[int]:
    """BIES-encode ``spans`` over a sentence of ``tokens`` (or a token count)."""
    n = tokens if isinstance(tokens, int) else len(tokens)
    tags = [0] * n
    covered = [False] * n
    for span in spans:
        if span.category not in inventory:
            raise ValueError(f"category {span.category!r} not in {inventory.name} inventory")
        if span.end > n:
            raise ValueError(f"span {span} runs past {n} tokens")
        if any(covered[span.start : span.end]):
            raise ValueError(f"span {span} overlaps another span")
        covered[span.start : span.end] = [True] * (span.end - span.start)
        if span.end - span.start == 1:
            tags[span.start] = inventory.tag_of("S", span.category)
        else:
            tags[span.start] = inventory.tag_of("B", span.category)
            for i in range(span.start + 1, span.end - 1):
                tags[i] = inventory.tag_of("I", span.category)
            tags[span.end - 1] = inventory.tag_of("E", span.category)
    return tags


def decode_labels(tag_ids: Sequence[int], inventory: CategoryInventory) -> list[SpanTag]:
    """Inverse of :func:`encode_spans`.

    Ill-formed input is repaired rather than rejected: an I or E tag extends
    the open span when the categories agree, otherwise it becomes a
    single-token span. An open span cut short by anything else ends at the
    last token it covered.
    """
    spans: list[SpanTag] = []
    open_cat: str | None = None
    open_start = 0

    def close(end: int) -> None:
        nonlocal open_cat
        if open_cat is not None:
            spans.append(SpanTag(open_cat, open_start, end))
            open_cat = None

    for i, tid in enumerate(tag_ids):
        if not 0 <= tid < len(inventory):
            raise ValueError(f"tag id {tid} out of range")
        pos, cat = inventory.split(tid)
        if pos in "IE" and open_cat == cat:
            if pos == "E":
                close(i + 1)
            continue
        close(i)
        if pos == "B":
            open_cat, open_start = cat, i
        elif pos != "O":
            spans.append(SpanTag(cat, i, i + 1))
    close(len(tag_ids))
    return spans
