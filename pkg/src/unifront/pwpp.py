"""Hierarchical prosody prediction: one binary tagger per level, highest level wins."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import ProsodyLevel
from .metrics import pwpp_f1
from .models.multitask import PWPP_LEVELS, ModelNotLoaded, MultiTaskTagger

__all__ = [
    "ProsodyPrediction",
    "baseline_tag",
    "binaries_from_merged",
    "merge_levels",
    "predict_level",
    "predict_prosody",
    "pwpp_f1",
]


@dataclass(frozen=True)
class ProsodyPrediction:
    binaries: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    merged: tuple[ProsodyLevel, ...]


def _require(model: MultiTaskTagger | None) -> MultiTaskTagger:
    if model is None:
        raise ModelNotLoaded("prosody prediction needs a trained tagger")
    return model


def predict_level(words: Sequence[str], level: int, model: MultiTaskTagger | None) -> list[int]:
    """Binary break decision after each word at one level (1 = break)."""
    if level not in PWPP_LEVELS:
        raise ValueError(f"prosody level must be 1, 2 or 3, got {level}")
    return _require(model).tag(f"pwpp{level}", words)


def merge_levels(b1: Sequence[int], b2: Sequence[int], b3: Sequence[int]) -> list[ProsodyLevel]:
    """Per word, the highest level whose binary decision is 1 (else #0)."""
    if not len(b1) == len(b2) == len(b3):
        raise ValueError(f"binary sequences differ in length: {len(b1)}, {len(b2)}, {len(b3)}")
    out = []
    for bits in zip(b1, b2, b3):
        level = 0
        for lv, bit in zip(PWPP_LEVELS, bits):
            if bit:
                level = lv
        out.append(ProsodyLevel(level))
    return out


def binaries_from_merged(merged: Sequence[int]) -> tuple[list[int], list[int], list[int]]:
    """Expand merged levels into the three binary tasks (a #3 break is positive at every level)."""
    b1, b2, b3 = ([int(m >= lv) for m in merged] for lv in PWPP_LEVELS)
    return b1, b2, b3


def baseline_tag(words: Sequence[str], model: MultiTaskTagger | None) -> list[ProsodyLevel]:
    """Single 4-class tagger over #0..#3, used as the comparison baseline."""
    return [ProsodyLevel(t) for t in _require(model).tag("pwpp_base", words)]


def predict_prosody(words: Sequence[str], model: MultiTaskTagger | None, final_break: bool = True) -> ProsodyPrediction:
    """Run the three level taggers and merge; optionally force #3 after the last word."""
    b1, b2, b3 = (predict_level(words, lv, model) for lv in PWPP_LEVELS)
    merged = merge_levels(b1, b2, b3)
    if final_break and merged:
        merged[-1] = ProsodyLevel.INTONATION
    return ProsodyPrediction((tuple(b1), tuple(b2), tuple(b3)), tuple(merged))
