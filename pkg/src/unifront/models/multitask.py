"""The shared multi-task tagger and checkpoint round-trips for both model kinds."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import torch
import torch.nn.functional as F
from torch import nn

from ..core import CategoryInventory, CharInventory, PhonemeInventory
from .checkpoint import load_checkpoint, save_checkpoint
from .crf import CrfHead, crf_nll_batch, crf_viterbi
from .encoder import CBGEncoder, Vocabulary, pad_batch
from .seq2seq import Seq2SeqModel, seq2seq_nll_batch
from .training import TrainConfig

PWPP_LEVELS = (1, 2, 3)
CRF_TASKS = ("tn", "pwpp1", "pwpp2", "pwpp3", "pwpp_base", "pos")
TASKS = CRF_TASKS + ("polyphone",)


class ModelNotLoaded(RuntimeError):
    pass


class MultiTaskTagger(nn.Module):
    """One word encoder feeding CRF heads for TN, the prosody levels and POS,
    plus a softmax head for polyphone classification.

    With ``config.shared_encoder`` off every task gets a private encoder.
    """

    def __init__(
        self,
        vocab: Vocabulary,
        tn_inventory: CategoryInventory,
        pos_inventory: CategoryInventory,
        config: TrainConfig | None = None,
        max_polyphone_classes: int = 4,
    ):
        super().__init__()
        self.config = config or TrainConfig()
        self.vocab = vocab
        self.tn_inventory = tn_inventory
        self.pos_inventory = pos_inventory
        self.max_polyphone_classes = max_polyphone_classes
        torch.manual_seed(self.config.seed)

        c = self.config
        names = ("shared",) if c.shared_encoder else ("tn", "pwpp", "pos", "polyphone")
        self.encoders = nn.ModuleDict(
            {
                n: CBGEncoder(len(vocab), c.embed_dim, c.bank_size, c.bank_channels, c.hidden_size, c.dropout)
                for n in names
            }
        )
        d = 2 * c.hidden_size
        self.heads = nn.ModuleDict(
            {
                "tn": CrfHead.for_inventory(d, tn_inventory),
                "pwpp1": CrfHead(d, 2),
                "pwpp2": CrfHead(d, 2),
                "pwpp3": CrfHead(d, 2),
                "pwpp_base": CrfHead(d, 4),
                "pos": CrfHead.for_inventory(d, pos_inventory),
            }
        )
        self.polyphone = nn.Linear(d, max_polyphone_classes)

    def encoder_for(self, task: str) -> CBGEncoder:
        if "shared" in self.encoders:
            return self.encoders["shared"]
        return self.encoders["pwpp" if task.startswith("pwpp") else task]

    def features(self, task: str, ids: torch.Tensor, lengths: torch.Tensor) -> torch.Tensor:
        p = self.config.word_dropout
        if self.training and p > 0:
            unknown = torch.as_tensor(self.vocab.unknown_ids(), dtype=torch.long)[ids]
            ids = torch.where(torch.rand(ids.shape) < p, unknown, ids)
        return self.encoder_for(task)(ids, lengths)

    def word_ids(self, words: Sequence[str]) -> list[int]:
        return self.vocab.encode(words)

    @torch.no_grad()
    def tag(self, task: str, words: Sequence[str]) -> list[int]:
        """Viterbi label ids for one sentence under a CRF head."""
        if task not in CRF_TASKS:
            raise KeyError(f"unknown tagging task {task!r}")
        if not words:
            return []
        self.eval()
        ids, lengths = pad_batch([self.word_ids(words)])
        em = self.heads[task].emissions(self.features(task, ids, lengths))[0]
        return crf_viterbi(em, self.heads[task])[0]

    @torch.no_grad()
    def polyphone_scores(self, words: Sequence[str], index: int, num_classes: int) -> torch.Tensor:
        self.eval()
        ids, lengths = pad_batch([self.word_ids(words)])
        h = self.features("polyphone", ids, lengths)[0, index]
        return self.polyphone(h)[:num_classes]

    def classify_polyphone(self, words: Sequence[str], index: int, num_classes: int) -> int:
        if num_classes <= 1:
            return 0
        if num_classes > self.max_polyphone_classes:
            raise ValueError(f"{num_classes} classes exceed the head's {self.max_polyphone_classes}")
        # torch.argmax returns the first maximum, i.e. the lowest class id.
        return int(torch.argmax(self.polyphone_scores(words, index, num_classes)))

    # -- losses ---------------------------------------------------------

    @staticmethod
    def crf_loss(task: str):
        def loss(model: "MultiTaskTagger", batch) -> torch.Tensor:
            ids, lengths = pad_batch([b[0] for b in batch])
            tags, _ = pad_batch([b[1] for b in batch])
            head = model.heads[task]
            em = head.emissions(model.features(task, ids, lengths))
            return crf_nll_batch(em, tags, lengths, head) / len(batch)

        return loss

    @staticmethod
    def polyphone_loss(model: "MultiTaskTagger", batch) -> torch.Tensor:
        ids, lengths = pad_batch([b[0] for b in batch])
        h = model.features("polyphone", ids, lengths)
        rows = torch.arange(len(batch))
        logits = model.polyphone(h[rows, torch.tensor([b[1] for b in batch])])
        valid = torch.arange(model.max_polyphone_classes)[None, :] < torch.tensor([b[3] for b in batch])[:, None]
        logits = logits.masked_fill(~valid, -1e9)
        return F.cross_entropy(logits, torch.tensor([b[2] for b in batch]))

    # -- persistence ----------------------------------------------------

    def inventory_digests(self) -> dict[str, str]:
        return {"tn": self.tn_inventory.digest, "pos": self.pos_inventory.digest}

    def save(self, path: str | Path) -> None:
        meta = {
            "kind": "multitask",
            "config": self.config.to_dict(),
            "vocab": self.vocab.itos,
            "max_polyphone_classes": self.max_polyphone_classes,
            "tn_categories": list(self.tn_inventory.categories),
            "pos_categories": list(self.pos_inventory.categories),
        }
        save_checkpoint(path, self.state_dict(), meta, self.inventory_digests())

    @classmethod
    def load(cls, path: str | Path, tn_inventory: CategoryInventory, pos_inventory: CategoryInventory) -> "MultiTaskTagger":
        state, meta = load_checkpoint(path, {"tn": tn_inventory.digest, "pos": pos_inventory.digest})
        if meta.get("kind") != "multitask":
            raise ValueError(f"{path} is not a multi-task checkpoint")
        vocab = Vocabulary()
        vocab.itos = list(meta["vocab"])
        vocab.stoi = {w: i for i, w in enumerate(vocab.itos)}
        model = cls(vocab, tn_inventory, pos_inventory, TrainConfig(**meta["config"]), meta["max_polyphone_classes"])
        model.to(_float_dtype(state))
        model.load_state_dict(state)
        model.eval()
        return model


def _float_dtype(state) -> torch.dtype:
    return next(t.dtype for t in state.values() if t.is_floating_point())


def g2p_loss(model: Seq2SeqModel, batch) -> torch.Tensor:
    return seq2seq_nll_batch([b[0] for b in batch], [b[1] for b in batch], model)


def build_seq2seq(chars: CharInventory, phonemes: PhonemeInventory, config: TrainConfig) -> Seq2SeqModel:
    torch.manual_seed(config.seed)
    return Seq2SeqModel(chars, phonemes, config.model_dim, config.num_heads, config.num_layers, dropout=config.dropout)


def save_seq2seq(path: str | Path, model: Seq2SeqModel, config: TrainConfig) -> None:
    meta = {"kind": "g2poov", "config": config.to_dict()}
    digests = {"chars": model.chars.digest, "phonemes": model.phonemes.digest}
    save_checkpoint(path, model.state_dict(), meta, digests)


def load_seq2seq(path: str | Path, chars: CharInventory, phonemes: PhonemeInventory) -> tuple[Seq2SeqModel, TrainConfig]:
    state, meta = load_checkpoint(path, {"chars": chars.digest, "phonemes": phonemes.digest})
    if meta.get("kind") != "g2poov":
        raise ValueError(f"{path} is not a G2P OOV checkpoint")
    config = TrainConfig(**meta["config"])
    model = build_seq2seq(chars, phonemes, config)
    model.to(_float_dtype(state))
    model.load_state_dict(state)
    model.eval()
    return model, config
