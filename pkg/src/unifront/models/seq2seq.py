"""Character-to-phoneme attention encoder-decoder with greedy and beam decoding."""

from __future__ import annotations

import math
from typing import Sequence

import torch
import torch.nn.functional as F
from torch import nn

from ..core import CharInventory, PhonemeInventory


class MultiHeadAttention(nn.Module):
    def __init__(self, dim: int, heads: int):
        super().__init__()
        if dim % heads:
            raise ValueError(f"model dimension {dim} not divisible by {heads} heads")
        self.heads = heads
        self.q = nn.Linear(dim, dim)
        self.k = nn.Linear(dim, dim)
        self.v = nn.Linear(dim, dim)
        self.out = nn.Linear(dim, dim)

    def forward(self, query, key, value, mask=None):
        # mask: broadcastable to [B, heads, Tq, Tk]; True marks positions to attend.
        B, Tq, D = query.shape
        Tk = key.shape[1]
        h, d = self.heads, D // self.heads
        q = self.q(query).view(B, Tq, h, d).transpose(1, 2)
        k = self.k(key).view(B, Tk, h, d).transpose(1, 2)
        v = self.v(value).view(B, Tk, h, d).transpose(1, 2)
        scores = q @ k.transpose(-1, -2) / math.sqrt(d)
        if mask is not None:
            scores = scores.masked_fill(~mask, -1e9)
        ctx = torch.softmax(scores, dim=-1) @ v
        return self.out(ctx.transpose(1, 2).reshape(B, Tq, D))


class _FeedForward(nn.Sequential):
    def __init__(self, dim: int, ff_dim: int, dropout: float):
        super().__init__(nn.Linear(dim, ff_dim), nn.ReLU(), nn.Dropout(dropout), nn.Linear(ff_dim, dim))


class EncoderLayer(nn.Module):
    def __init__(self, dim, heads, ff_dim, dropout):
        super().__init__()
        self.attn = MultiHeadAttention(dim, heads)
        self.ff = _FeedForward(dim, ff_dim, dropout)
        self.norm1 = nn.LayerNorm(dim)
        self.norm2 = nn.LayerNorm(dim)
        self.drop = nn.Dropout(dropout)

    def forward(self, x, mask):
        x = self.norm1(x + self.drop(self.attn(x, x, x, mask)))
        return self.norm2(x + self.drop(self.ff(x)))


class DecoderLayer(nn.Module):
    def __init__(self, dim, heads, ff_dim, dropout):
        super().__init__()
        self.self_attn = MultiHeadAttention(dim, heads)
        self.cross_attn = MultiHeadAttention(dim, heads)
        self.ff = _FeedForward(dim, ff_dim, dropout)
        self.norms = nn.ModuleList(nn.LayerNorm(dim) for _ in range(3))
        self.drop = nn.Dropout(dropout)

    def forward(self, y, memory, self_mask, mem_mask):
        y = self.norms[0](y + self.drop(self.self_attn(y, y, y, self_mask)))
        y = self.norms[1](y + self.drop(self.cross_attn(y, memory, memory, mem_mask)))
        return self.norms[2](y + self.drop(self.ff(y)))


def sinusoid_table(length: int, dim: int) -> torch.Tensor:
    pos = torch.arange(length, dtype=torch.float64)[:, None]
    i = torch.arange(0, dim, 2, dtype=torch.float64)
    angle = pos / torch.pow(10000.0, i / dim)
    table = torch.zeros(length, dim, dtype=torch.float64)
    table[:, 0::2] = torch.sin(angle)
    table[:, 1::2] = torch.cos(angle[:, : dim // 2])
    return table


class Seq2SeqModel(nn.Module):
    """Attention encoder over characters, autoregressive decoder over phonemes.

    The output distribution covers the content phonemes plus end-of-sequence;
    padding and begin-of-sequence are never emitted.
    """

    def __init__(
        self,
        chars: CharInventory,
        phonemes: PhonemeInventory,
        model_dim: int = 256,
        num_heads: int = 4,
        num_layers: int = 2,
        ff_dim: int | None = None,
        dropout: float = 0.0,
        max_positions: int = 256,
    ):
        super().__init__()
        self.chars = chars
        self.phonemes = phonemes
        self.model_dim = model_dim
        self.src_embed = nn.Embedding(len(chars), model_dim, padding_idx=chars.pad_id)
        self.tgt_embed = nn.Embedding(len(phonemes), model_dim, padding_idx=phonemes.pad_id)
        self.register_buffer("positions", sinusoid_table(max_positions, model_dim).float(), persistent=False)
        ff_dim = ff_dim or 4 * model_dim
        self.encoder_layers = nn.ModuleList(EncoderLayer(model_dim, num_heads, ff_dim, dropout) for _ in range(num_layers))
        self.decoder_layers = nn.ModuleList(DecoderLayer(model_dim, num_heads, ff_dim, dropout) for _ in range(num_layers))
        self.out = nn.Linear(model_dim, len(phonemes))
        banned = torch.zeros(len(phonemes), dtype=torch.bool)
        banned[phonemes.pad_id] = True
        banned[phonemes.bos_id] = True
        self.register_buffer("banned", banned, persistent=False)

    def _embed(self, table: nn.Embedding, ids: torch.Tensor) -> torch.Tensor:
        x = table(ids) * math.sqrt(self.model_dim)
        return x + self.positions[: ids.shape[1]].to(x.dtype)[None]

    def encode(self, src: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        mask = (src != self.chars.pad_id)[:, None, None, :]
        x = self._embed(self.src_embed, src)
        for layer in self.encoder_layers:
            x = layer(x, mask)
        return x, mask

    def decode(self, memory: torch.Tensor, mem_mask: torch.Tensor, tgt_in: torch.Tensor) -> torch.Tensor:
        """Log-probabilities ``[B, T, V]`` for each position of ``tgt_in``."""
        T = tgt_in.shape[1]
        causal = torch.tril(torch.ones(T, T, dtype=torch.bool, device=tgt_in.device))
        self_mask = causal[None, None] & (tgt_in != self.phonemes.pad_id)[:, None, None, :]
        y = self._embed(self.tgt_embed, tgt_in)
        for layer in self.decoder_layers:
            y = layer(y, memory, self_mask, mem_mask)
        logits = self.out(y).masked_fill(self.banned, float("-inf"))
        return F.log_softmax(logits, dim=-1)

    def forward(self, src: torch.Tensor, tgt_in: torch.Tensor) -> torch.Tensor:
        memory, mask = self.encode(src)
        return self.decode(memory, mask, tgt_in)


def max_decode_length(num_chars: int) -> int:
    return 4 * num_chars + 4


def _check_word(word: Sequence[int]) -> None:
    if len(word) == 0:
        raise ValueError("cannot decode an empty word")


def seq2seq_nll(word: Sequence[int], gold: Sequence[int], model: Seq2SeqModel) -> torch.Tensor:
    """Mean per-token cross entropy of ``gold`` + end-of-sequence under teacher forcing."""
    _check_word(word)
    inv = model.phonemes
    n = len(inv)
    if any(not inv.pad_id < g < n or g in (inv.bos_id, inv.eos_id) for g in gold):
        raise ValueError("gold phoneme id outside the content inventory")
    if any(not 0 < c < len(model.chars) for c in word):
        raise ValueError("character id outside the inventory")
    src = torch.as_tensor([list(word)], dtype=torch.long)
    tgt_in = torch.as_tensor([[inv.bos_id, *gold]], dtype=torch.long)
    tgt_out = torch.as_tensor([[*gold, inv.eos_id]], dtype=torch.long)
    logp = model(src, tgt_in)
    return F.nll_loss(logp[0], tgt_out[0])


def seq2seq_nll_batch(words, golds, model: Seq2SeqModel) -> torch.Tensor:
    """Token-averaged cross entropy over a batch of (char ids, phoneme ids) pairs."""
    inv = model.phonemes
    B = len(words)
    S = max(len(w) for w in words)
    T = max(len(g) for g in golds) + 1
    src = torch.full((B, S), model.chars.pad_id, dtype=torch.long)
    tgt_in = torch.full((B, T), inv.pad_id, dtype=torch.long)
    tgt_out = torch.full((B, T), inv.pad_id, dtype=torch.long)
    for i, (w, g) in enumerate(zip(words, golds)):
        src[i, : len(w)] = torch.as_tensor(w)
        tgt_in[i, : len(g) + 1] = torch.as_tensor([inv.bos_id, *g])
        tgt_out[i, : len(g) + 1] = torch.as_tensor([*g, inv.eos_id])
    logp = model(src, tgt_in)
    return F.nll_loss(logp.reshape(-1, logp.shape[-1]), tgt_out.reshape(-1), ignore_index=inv.pad_id)


@torch.no_grad()
def greedy_decode(word: Sequence[int], model: Seq2SeqModel, max_len: int | None = None) -> tuple[list[int], float]:
    """Argmax at every step (lowest id on ties) until end-of-sequence or the cap."""
    _check_word(word)
    inv = model.phonemes
    cap = max_decode_length(len(word)) if max_len is None else max_len
    model.eval()
    memory, mask = model.encode(torch.as_tensor([list(word)], dtype=torch.long))
    seq: list[int] = []
    score = 0.0
    while len(seq) < cap:
        tgt = torch.as_tensor([[inv.bos_id, *seq]], dtype=torch.long)
        logp = model.decode(memory, mask, tgt)[0, -1].double()
        tok = int(torch.argmax(logp))
        score += float(logp[tok])
        if tok == inv.eos_id:
            break
        seq.append(tok)
    return seq, score


@torch.no_grad()
def beam_decode(
    word: Sequence[int], model: Seq2SeqModel, beam: int = 3, max_len: int | None = None
) -> list[tuple[list[int], float]]:
    """Length-bounded beam search; returns up to ``beam`` complete hypotheses, best first.

    Each step expands every live prefix by every output symbol and keeps the
    ``beam`` best expansions by cumulative log-probability (ties go to the
    lexicographically smaller id sequence). Expansions ending in
    end-of-sequence, or reaching ``max_len`` phonemes, are complete and leave
    the beam.
    """
    _check_word(word)
    if beam < 1:
        raise ValueError("beam size must be at least 1")
    inv = model.phonemes
    cap = max_decode_length(len(word)) if max_len is None else max_len
    model.eval()
    memory, mask = model.encode(torch.as_tensor([list(word)], dtype=torch.long))
    live: list[tuple[tuple[int, ...], float]] = [((), 0.0)]
    done: list[tuple[tuple[int, ...], float]] = []
    if cap == 0:
        return [([], 0.0)]
    while live:
        tgt = torch.as_tensor([[inv.bos_id, *seq] for seq, _ in live], dtype=torch.long)
        B = len(live)
        logp = model.decode(memory.expand(B, -1, -1), mask.expand(B, -1, -1, -1), tgt)[:, -1].double()
        candidates = []
        for (seq, score), row in zip(live, logp.tolist()):
            for tok, lp in enumerate(row):
                if lp != float("-inf"):
                    candidates.append((seq + (tok,), score + lp))
        candidates.sort(key=lambda c: (-c[1], c[0]))
        live = []
        for seq, score in candidates[:beam]:
            if seq[-1] == inv.eos_id:
                done.append((seq[:-1], score))
            elif len(seq) >= cap:
                done.append((seq, score))
            else:
                live.append((seq, score))
    done.sort(key=lambda c: (-c[1], c[0]))
    return [(list(seq), score) for seq, score in done[:beam]]
