"""Sentence error rate, word error rate and prosody boundary F1."""

from __future__ import annotations

from typing import Sequence


def _check_lengths(pred: Sequence, gold: Sequence, what: str) -> None:
    if len(pred) != len(gold):
        raise ValueError(f"{what}: {len(pred)} predictions for {len(gold)} references")


def ser(pred: Sequence[str], ref: Sequence[str]) -> float:
    """Fraction of sentences whose prediction differs from the reference string."""
    _check_lengths(pred, ref, "ser")
    if not ref:
        return 0.0
    return sum(p != r for p, r in zip(pred, ref)) / len(ref)


def g2p_wer(pred: Sequence[Sequence[str]], gold: Sequence[Sequence[str]]) -> float:
    """Fraction of words whose phoneme sequence is not exactly the reference."""
    _check_lengths(pred, gold, "g2p_wer")
    if not gold:
        return 0.0
    return sum(tuple(p) != tuple(g) for p, g in zip(pred, gold)) / len(gold)


def boundary_counts(pred: Sequence[int], gold: Sequence[int], level: int) -> tuple[int, int, int]:
    """(true positives, predicted positives, gold positives) with positives = level >= ``level``."""
    _check_lengths(pred, gold, "pwpp_f1")
    if level not in (1, 2, 3):
        raise ValueError(f"prosody level must be 1, 2 or 3, got {level}")
    p = [int(x) >= level for x in pred]
    g = [int(x) >= level for x in gold]
    return sum(a and b for a, b in zip(p, g)), sum(p), sum(g)


def f1_from_counts(tp: int, n_pred: int, n_gold: int) -> float:
    # Nothing predicted and nothing to find counts as perfect agreement.
    if n_pred == 0 and n_gold == 0:
        return 1.0
    if tp == 0:
        return 0.0
    precision, recall = tp / n_pred, tp / n_gold
    return 2 * precision * recall / (precision + recall)


def pwpp_f1(pred: Sequence[int], gold: Sequence[int], level: int) -> float:
    """Boundary F1 at one prosody level over merged per-word levels."""
    return f1_from_counts(*boundary_counts(pred, gold, level))
