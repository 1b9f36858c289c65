"""Shared sequence-model core: encoder, masked CRF, seq2seq with beam search."""

from .checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from .crf import (
    CrfHead,
    NoLegalPathError,
    bies_constraints,
    crf_log_partition,
    crf_nll,
    crf_nll_batch,
    crf_path_score,
    crf_viterbi,
)
from .encoder import CBGEncoder, Vocabulary, encode, pad_batch
from .multitask import (
    CRF_TASKS,
    ModelNotLoaded,
    MultiTaskTagger,
    build_seq2seq,
    g2p_loss,
    load_seq2seq,
    save_seq2seq,
)
from .seq2seq import Seq2SeqModel, beam_decode, greedy_decode, max_decode_length, seq2seq_nll, seq2seq_nll_batch
from .training import TaskData, TrainConfig, TrainingDiverged, TrainResult, train

__all__ = [
    "CBGEncoder",
    "CRF_TASKS",
    "CheckpointError",
    "CrfHead",
    "ModelNotLoaded",
    "MultiTaskTagger",
    "NoLegalPathError",
    "Seq2SeqModel",
    "TaskData",
    "TrainConfig",
    "TrainResult",
    "TrainingDiverged",
    "Vocabulary",
    "beam_decode",
    "bies_constraints",
    "build_seq2seq",
    "crf_log_partition",
    "crf_nll",
    "crf_nll_batch",
    "crf_path_score",
    "crf_viterbi",
    "encode",
    "g2p_loss",
    "greedy_decode",
    "load_checkpoint",
    "load_seq2seq",
    "max_decode_length",
    "pad_batch",
    "save_checkpoint",
    "save_seq2seq",
    "seq2seq_nll",
    "seq2seq_nll_batch",
    "train",
]
