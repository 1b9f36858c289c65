"""Phoneme-level normative labels from per-word pronunciations, prosody and POS."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import ProsodyLevel

COLUMNS = ("word_idx", "word", "phoneme", "ph_idx", "prosody", "pos", "provenance")
HEADER = "\t".join(COLUMNS)


@dataclass(frozen=True)
class NormativeRow:
    word_idx: int
    word: str
    phoneme: str
    ph_idx: int
    prosody: ProsodyLevel
    pos: str
    provenance: str = ""

    def to_tsv(self) -> str:
        return "\t".join(
            (str(self.word_idx), self.word, self.phoneme, str(self.ph_idx), f"#{int(self.prosody)}", self.pos, self.provenance)
        )


def build_normative_label(
    words: Sequence[str],
    phonemes: Sequence[Sequence[str]],
    prosody: Sequence[int],
    pos: Sequence[str],
    provenance: Sequence[str] | None = None,
) -> list[NormativeRow]:
    """One row per phoneme; a word's prosody level sits on its last phoneme only."""
    provenance = provenance if provenance is not None else [""] * len(words)
    counts = {len(x) for x in (words, phonemes, prosody, pos, provenance)}
    if len(counts) != 1:
        raise ValueError(
            f"word counts differ: words={len(words)} phonemes={len(phonemes)} "
            f"prosody={len(prosody)} pos={len(pos)} provenance={len(provenance)}"
        )
    rows = []
    for w, (word, seq, level, tag, prov) in enumerate(zip(words, phonemes, prosody, pos, provenance)):
        if not seq:
            raise ValueError(f"word {w} ({word!r}) has no phonemes")
        last = len(seq) - 1
        for j, ph in enumerate(seq):
            rows.append(NormativeRow(w, word, ph, j, ProsodyLevel(level if j == last else 0), tag, prov))
    return rows


def format_label(blocks: Iterable[Sequence[NormativeRow]]) -> str:
    """TSV text: a header line, then each sentence's rows followed by a blank line.

    No sentences give an empty string.
    """
    parts = []
    for rows in blocks:
        parts.extend(r.to_tsv() + "\n" for r in rows)
        parts.append("\n")
    return HEADER + "\n" + "".join(parts) if parts else ""


def parse_label(text: str) -> list[list[NormativeRow]]:
    """Inverse of :func:`format_label`."""
    lines = text.split("\n")
    if not text:
        return []
    if lines[0] != HEADER:
        raise ValueError("missing normative label header")
    blocks: list[list[NormativeRow]] = []
    current: list[NormativeRow] = []
    for lineno, line in enumerate(lines[1:-1], 2):
        if line == "":
            blocks.append(current)
            current = []
            continue
        f = line.split("\t")
        if len(f) != len(COLUMNS) or not f[4].startswith("#"):
            raise ValueError(f"line {lineno}: malformed row {line!r}")
        current.append(NormativeRow(int(f[0]), f[1], f[2], int(f[3]), ProsodyLevel(int(f[4][1:])), f[5], f[6]))
    if current:
        raise ValueError("last sentence block is not terminated by a blank line")
    return blocks
