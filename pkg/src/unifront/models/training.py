"""Training loop shared by every task head."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Mapping, NamedTuple, Sequence

import numpy as np
import torch
from torch import nn

log = logging.getLogger(__name__)


@dataclass
class TrainConfig:
    # The published 5e-5 rate is for fine-tuning a pre-trained language
    # model; the encoders here start from scratch.
    learning_rate: float = 1e-3
    weight_decay: float = 0.01
    epochs: int = 50
    batch_size: int = 32
    beam_size: int = 3
    hidden_size: int = 256
    model_dim: int = 256
    num_heads: int = 4
    num_layers: int = 2
    embed_dim: int = 128
    bank_size: int = 8
    bank_channels: int = 16
    dropout: float = 0.0
    # Chance of hiding a known word behind its unknown-word bucket while training.
    word_dropout: float = 0.0
    clip_norm: float = 5.0
    shared_encoder: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        if self.beam_size < 1:
            raise ValueError("beam size must be >= 1")
        for name in ("hidden_size", "model_dim", "num_heads", "num_layers", "embed_dim", "bank_size", "bank_channels", "batch_size"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 <= self.word_dropout < 1.0:
            raise ValueError("word_dropout must be in [0, 1)")
        if self.model_dim % self.num_heads:
            raise ValueError("model_dim must be divisible by num_heads")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


class TaskData(NamedTuple):
    """Examples for one task and the function scoring a batch of them."""

    examples: Sequence[Any]
    loss: Callable[[nn.Module, Sequence[Any]], torch.Tensor]


class TrainingDiverged(RuntimeError):
    def __init__(self, epoch: int, task: str):
        super().__init__(f"non-finite loss for task {task!r} in epoch {epoch}")
        self.epoch = epoch
        self.task = task


@dataclass
class TrainResult:
    model: nn.Module
    history: list[float] = field(default_factory=list)
    task_history: dict[str, list[float]] = field(default_factory=dict)
    stopped_epoch: int | None = None


def train(
    model: nn.Module,
    tasks: Mapping[str, TaskData] | TaskData,
    config: TrainConfig,
    stop_when: Callable[[nn.Module, int], bool] | None = None,
) -> TrainResult:
    """Optimize ``model`` with AdamW, one summed multi-task loss per step.

    Every epoch each task's examples are shuffled into batches; step ``i``
    sums the loss of batch ``i`` of every task, cycling tasks that run out of
    batches first. ``stop_when(model, epoch)`` is consulted after each epoch.
    """
    if isinstance(tasks, TaskData):
        tasks = {"task": tasks}
    if not tasks or any(len(t.examples) == 0 for t in tasks.values()):
        raise ValueError("training needs at least one example per task")
    torch.manual_seed(config.seed)
    rng = np.random.default_rng(config.seed)
    opt = torch.optim.AdamW(model.parameters(), lr=config.learning_rate, weight_decay=config.weight_decay)
    result = TrainResult(model, task_history={name: [] for name in tasks})

    for epoch in range(config.epochs):
        model.train()
        batches = {}
        for name, task in tasks.items():
            order = rng.permutation(len(task.examples))
            batches[name] = [
                [task.examples[j] for j in order[i : i + config.batch_size]]
                for i in range(0, len(order), config.batch_size)
            ]
        steps = max(len(b) for b in batches.values())
        sums = {name: 0.0 for name in tasks}
        for step in range(steps):
            opt.zero_grad()
            total = 0.0
            for name, task in tasks.items():
                task_batches = batches[name]
                loss = task.loss(model, task_batches[step % len(task_batches)])
                if not torch.isfinite(loss):
                    raise TrainingDiverged(epoch, name)
                total = total + loss
                sums[name] += float(loss.detach())
            total.backward()
            if config.clip_norm:
                nn.utils.clip_grad_norm_(model.parameters(), config.clip_norm)
            opt.step()
        for name in tasks:
            result.task_history[name].append(sums[name] / steps)
        result.history.append(sum(sums.values()) / steps)
        log.debug("epoch %d loss %.5f", epoch, result.history[-1])
        if not math.isfinite(result.history[-1]):
            raise TrainingDiverged(epoch, "total")
        if stop_when is not None and stop_when(model, epoch):
            result.stopped_epoch = epoch
            break
    model.eval()
    return result
