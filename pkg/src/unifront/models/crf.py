"""Masked linear-chain CRF: Viterbi decoding, forward algorithm and NLL."""

from __future__ import annotations

from typing import Sequence

import numpy as np
import torch
from torch import nn

from ..core import CategoryInventory

# Finite stand-in for -inf in differentiable code: exp(MASKED - x) is exactly
# zero in both float32 and float64, and it never yields nan gradients.
MASKED = -1e30


class NoLegalPathError(ValueError):
    """The transition mask leaves no legal label path."""


def bies_constraints(inventory: CategoryInventory) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Allowed transitions, start labels and end labels for a BIES scheme."""
    L = len(inventory)
    parts = [inventory.split(i) for i in range(L)]
    allowed = np.zeros((L, L), dtype=bool)
    for i, (pi, ci) in enumerate(parts):
        for j, (pj, cj) in enumerate(parts):
            if pi in "BI":
                allowed[i, j] = pj in "IE" and cj == ci
            else:
                allowed[i, j] = pj in "BSO"
    start_ok = np.array([p in "BSO" for p, _ in parts])
    end_ok = np.array([p in "ESO" for p, _ in parts])
    return allowed, start_ok, end_ok


class CrfHead(nn.Module):
    """Emission projection plus masked transition scores."""

    def __init__(
        self,
        in_dim: int,
        num_labels: int,
        allowed: np.ndarray | None = None,
        start_ok: np.ndarray | None = None,
        end_ok: np.ndarray | None = None,
    ):
        super().__init__()
        L = num_labels
        self.num_labels = L
        self.proj = nn.Linear(in_dim, L)
        self.transitions = nn.Parameter(torch.zeros(L, L))
        self.start = nn.Parameter(torch.zeros(L))
        self.end = nn.Parameter(torch.zeros(L))
        ones = np.ones(L, dtype=bool)
        self.register_buffer("allowed", torch.as_tensor(np.ones((L, L), bool) if allowed is None else allowed))
        self.register_buffer("start_ok", torch.as_tensor(ones if start_ok is None else start_ok))
        self.register_buffer("end_ok", torch.as_tensor(ones if end_ok is None else end_ok))

    @classmethod
    def for_inventory(cls, in_dim: int, inventory: CategoryInventory) -> "CrfHead":
        return cls(in_dim, len(inventory), *bies_constraints(inventory))

    def emissions(self, features: torch.Tensor) -> torch.Tensor:
        return self.proj(features)

    def masked_scores(self) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
        return (
            self.transitions.masked_fill(~self.allowed, MASKED),
            self.start.masked_fill(~self.start_ok, MASKED),
            self.end.masked_fill(~self.end_ok, MASKED),
        )

    def numpy_scores(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Transition/start/end scores as float64 arrays with true -inf masks."""
        trans = self.transitions.detach().double().cpu().numpy().copy()
        start = self.start.detach().double().cpu().numpy().copy()
        end = self.end.detach().double().cpu().numpy().copy()
        trans[~self.allowed.cpu().numpy()] = -np.inf
        start[~self.start_ok.cpu().numpy()] = -np.inf
        end[~self.end_ok.cpu().numpy()] = -np.inf
        return trans, start, end


def crf_viterbi(emissions, head: CrfHead) -> tuple[list[int], float]:
    """Best mask-legal label path and its score.

    Among equal-scoring paths the one with the lowest label id at the
    earliest differing position wins. Best suffix scores are computed
    right-to-left so that the left-to-right read-out can take the first
    maximum at every position.
    """
    em = emissions.detach().double().cpu().numpy() if torch.is_tensor(emissions) else np.asarray(emissions, float)
    n, L = em.shape
    if n == 0:
        raise ValueError("crf_viterbi needs at least one position")
    trans, start, end = head.numpy_scores()
    suffix = np.empty((n, L))
    suffix[-1] = em[-1] + end
    for t in range(n - 2, -1, -1):
        suffix[t] = em[t] + np.max(trans + suffix[t + 1][None, :], axis=1)
    first = start + suffix[0]
    best = float(np.max(first))
    if not np.isfinite(best):
        raise NoLegalPathError("no mask-legal label path")
    path = [int(np.argmax(first))]
    for t in range(1, n):
        path.append(int(np.argmax(trans[path[-1]] + suffix[t])))
    return path, best


def crf_path_score(emissions: torch.Tensor, labels: Sequence[int], head: CrfHead) -> torch.Tensor:
    trans, start, end = head.masked_scores()
    idx = torch.as_tensor(list(labels), dtype=torch.long)
    score = start[idx[0]] + emissions[torch.arange(len(idx)), idx].sum() + end[idx[-1]]
    if len(idx) > 1:
        score = score + trans[idx[:-1], idx[1:]].sum()
    return score


def crf_log_partition(emissions: torch.Tensor, head: CrfHead) -> torch.Tensor:
    """Log of the summed exponentiated scores of every mask-legal path."""
    if emissions.shape[0] == 0:
        raise ValueError("crf_log_partition needs at least one position")
    trans, start, end = head.masked_scores()
    alpha = start + emissions[0]
    for t in range(1, emissions.shape[0]):
        alpha = torch.logsumexp(alpha[:, None] + trans, dim=0) + emissions[t]
    log_z = torch.logsumexp(alpha + end, dim=0)
    if log_z.detach().item() < MASKED / 2:
        raise NoLegalPathError("no mask-legal label path")
    return log_z


def _check_legal(labels: Sequence[int], head: CrfHead) -> None:
    labels = list(labels)
    if not labels:
        raise ValueError("empty label path")
    ok = bool(head.start_ok[labels[0]]) and bool(head.end_ok[labels[-1]])
    ok = ok and all(bool(head.allowed[a, b]) for a, b in zip(labels, labels[1:]))
    if not ok:
        raise ValueError(f"gold path {labels} is illegal under the transition mask")


def crf_nll(emissions: torch.Tensor, gold: Sequence[int], head: CrfHead) -> torch.Tensor:
    """Negative log-likelihood of ``gold``: log-partition minus the gold path score."""
    _check_legal(gold, head)
    return crf_log_partition(emissions, head) - crf_path_score(emissions, gold, head)


def crf_nll_batch(emissions: torch.Tensor, tags: torch.Tensor, lengths: torch.Tensor, head: CrfHead) -> torch.Tensor:
    """Summed NLL of a padded batch. ``emissions`` is ``[B, n, L]``, ``tags`` ``[B, n]``."""
    B, n, L = emissions.shape
    trans, start, end = head.masked_scores()
    mask = torch.arange(n)[None, :] < lengths[:, None]
    rows = torch.arange(B)

    alpha = start[None, :] + emissions[:, 0]
    gold = start[tags[:, 0]] + emissions[rows, 0, tags[:, 0]]
    for t in range(1, n):
        step = torch.logsumexp(alpha[:, :, None] + trans[None], dim=1) + emissions[:, t]
        m = mask[:, t]
        alpha = torch.where(m[:, None], step, alpha)
        gold_step = trans[tags[:, t - 1], tags[:, t]] + emissions[rows, t, tags[:, t]]
        gold = gold + torch.where(m, gold_step, torch.zeros_like(gold_step))
    last = tags[rows, lengths - 1]
    log_z = torch.logsumexp(alpha + end[None, :], dim=1)
    return (log_z - gold - end[last]).sum()
