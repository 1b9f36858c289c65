"""Word vocabulary and the convolution-bank + bidirectional GRU encoder."""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import torch
import torch.nn.functional as F
from torch import nn

_SHAPES = ("num1", "num2", "num3", "num4", "num5", "alpha", "Alpha", "ALPHA", "alnum", "punct", "other")


def word_shape(word: str) -> str:
    """Coarse orthographic class used for words missing from the vocabulary."""
    if word.isdigit():
        return f"num{min(len(word), 5)}"
    if word.isalpha():
        if word.islower():
            return "alpha"
        return "ALPHA" if word.isupper() else "Alpha"
    if word.isalnum():
        return "alnum"
    if re.fullmatch(r"[^\w\s]+", word):
        return "punct"
    return "other"


class Vocabulary:
    """Lowercased word types; unknown words map to a bucket by their shape."""

    PAD = "<pad>"

    def __init__(self, words: Iterable[str] = ()):
        self.itos: list[str] = [self.PAD] + [f"<unk:{s}>" for s in _SHAPES]
        self.stoi = {w: i for i, w in enumerate(self.itos)}
        for w in words:
            self.add(w)

    def add(self, word: str) -> int:
        key = word.lower()
        if key not in self.stoi:
            self.stoi[key] = len(self.itos)
            self.itos.append(key)
        return self.stoi[key]

    def __len__(self) -> int:
        return len(self.itos)

    def id(self, word: str) -> int:
        key = word.lower()
        if key in self.stoi:
            return self.stoi[key]
        return self.stoi[f"<unk:{word_shape(word)}>"]

    def encode(self, words: Iterable[str]) -> list[int]:
        return [self.id(w) for w in words]

    def unknown_ids(self) -> list[int]:
        """For every id, the id its word would get if it were unknown."""
        n_special = 1 + len(_SHAPES)
        return list(range(n_special)) + [self.stoi[f"<unk:{word_shape(w)}>"] for w in self.itos[n_special:]]


class CBGEncoder(nn.Module):
    """Embeddings, a bank of 1-D convolutions of widths 1..K and a BiGRU.

    Output features have width ``2 * hidden_size`` per token.
    """

    def __init__(
        self,
        vocab_size: int,
        embed_dim: int = 128,
        bank_size: int = 8,
        bank_channels: int = 16,
        hidden_size: int = 256,
        dropout: float = 0.0,
    ):
        super().__init__()
        self.vocab_size = vocab_size
        self.hidden_size = hidden_size
        self.embed = nn.Embedding(vocab_size, embed_dim, padding_idx=0)
        self.bank = nn.ModuleList(nn.Conv1d(embed_dim, bank_channels, k) for k in range(1, bank_size + 1))
        self.bank_proj = nn.Linear(bank_size * bank_channels, embed_dim)
        self.rnn = nn.GRU(embed_dim, hidden_size, batch_first=True, bidirectional=True)
        self.dropout = nn.Dropout(dropout)

    @property
    def out_dim(self) -> int:
        return 2 * self.hidden_size

    def forward(self, ids: torch.Tensor, lengths: torch.Tensor) -> torch.Tensor:
        """``ids`` is ``[B, n]`` padded with 0; returns ``[B, n, 2H]``."""
        x = self.dropout(self.embed(ids))
        xc = x.transpose(1, 2)
        outs = []
        for conv in self.bank:
            k = conv.kernel_size[0]
            outs.append(conv(F.pad(xc, ((k - 1) // 2, k // 2))))
        bank = torch.relu(torch.cat(outs, dim=1)).transpose(1, 2)
        h = x + self.bank_proj(bank)
        packed = nn.utils.rnn.pack_padded_sequence(h, lengths.cpu(), batch_first=True, enforce_sorted=False)
        out, _ = self.rnn(packed)
        out, _ = nn.utils.rnn.pad_packed_sequence(out, batch_first=True, total_length=ids.shape[1])
        return self.dropout(out)


def pad_batch(seqs: Sequence[Sequence[int]], pad: int = 0) -> tuple[torch.Tensor, torch.Tensor]:
    lengths = torch.tensor([len(s) for s in seqs], dtype=torch.long)
    out = torch.full((len(seqs), max(1, int(lengths.max()) if len(seqs) else 1)), pad, dtype=torch.long)
    for i, s in enumerate(seqs):
        out[i, : len(s)] = torch.as_tensor(list(s), dtype=torch.long)
    return out, lengths


@torch.no_grad()
def encode(token_ids: Sequence[int], encoder: CBGEncoder) -> torch.Tensor:
    """Contextual features ``[n, 2H]`` for one sentence, in inference mode."""
    dtype = encoder.embed.weight.dtype
    if len(token_ids) == 0:
        return torch.zeros((0, encoder.out_dim), dtype=dtype)
    if min(token_ids) < 0 or max(token_ids) >= encoder.vocab_size:
        raise IndexError(f"token id out of range for vocabulary of {encoder.vocab_size}")
    was_training = encoder.training
    encoder.eval()
    try:
        ids, lengths = pad_batch([token_ids])
        return encoder(ids, lengths)[0]
    finally:
        encoder.train(was_training)
