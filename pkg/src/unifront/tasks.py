"""Training and evaluation harnesses for the five task heads."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


from .core import (
    CategoryInventory,
    CharInventory,
    PhonemeInventory,
    encode_spans,
    load_char_inventory,
    load_phoneme_inventory,
    load_pos_inventory,
    load_tn_inventory,
)
from .corpora import PolyphoneExample, PosExample, ProsodyExample, TnExample
from .g2p.lexicon import HomographTable, Lexicon, PhonemeSeq
from .g2p.resolve import pos_tag, resolve_pronunciations
from .metrics import g2p_wer, pwpp_f1, ser
from .models.encoder import Vocabulary
from .models.multitask import MultiTaskTagger, build_seq2seq, g2p_loss
from .models.seq2seq import Seq2SeqModel, beam_decode, greedy_decode
from .models.training import TaskData, TrainConfig, TrainResult, train
from .pwpp import binaries_from_merged, predict_prosody
from .tn.normalize import normalize
from .tn.rules import RuleSet

TAGGER_TASKS = ("tn", "pwpp", "pos", "polyphone")
BEAM_SWEEP = (1, 2, 3, 5, 10)
ABLATION_STAGES = ("lexicon", "+g2poov", "+pos", "+polyphone")


@dataclass
class TaggerCorpora:
    """Training sentences for the heads of the multi-task tagger; any may be empty."""

    tn: Sequence[TnExample] = ()
    pwpp: Sequence[ProsodyExample] = ()
    pos: Sequence[PosExample] = ()
    polyphone: Sequence[PolyphoneExample] = ()

    def sentences(self) -> list[Sequence[str]]:
        return (
            [e.words for e in self.tn]
            + [e.words for e in self.pwpp]
            + [e.words for e in self.pos]
            + [e.words for e in self.polyphone]
        )

    def active(self) -> list[str]:
        return [name for name in TAGGER_TASKS if getattr(self, name)]


def build_vocabulary(corpora: TaggerCorpora) -> Vocabulary:
    return Vocabulary(w for sent in corpora.sentences() for w in sent)


def tagger_task_data(model: MultiTaskTagger, corpora: TaggerCorpora) -> dict[str, TaskData]:
    """Per-head training examples; the prosody corpus feeds four heads."""
    tasks: dict[str, TaskData] = {}
    ids = model.word_ids
    if corpora.tn:
        tasks["tn"] = TaskData(
            [(ids(e.words), encode_spans(e.tokens, e.spans, model.tn_inventory)) for e in corpora.tn],
            MultiTaskTagger.crf_loss("tn"),
        )
    if corpora.pwpp:
        rows = [(ids(e.words), e.levels, binaries_from_merged(e.levels)) for e in corpora.pwpp]
        for lv in (1, 2, 3):
            tasks[f"pwpp{lv}"] = TaskData([(w, b[lv - 1]) for w, _, b in rows], MultiTaskTagger.crf_loss(f"pwpp{lv}"))
        tasks["pwpp_base"] = TaskData([(w, list(m)) for w, m, _ in rows], MultiTaskTagger.crf_loss("pwpp_base"))
    if corpora.pos:
        tasks["pos"] = TaskData(
            [(ids(e.words), encode_spans(len(e.words), e.spans, model.pos_inventory)) for e in corpora.pos],
            MultiTaskTagger.crf_loss("pos"),
        )
    if corpora.polyphone:
        tasks["polyphone"] = TaskData(
            [(ids(e.words), e.index, e.class_id, e.num_classes) for e in corpora.polyphone],
            MultiTaskTagger.polyphone_loss,
        )
    return tasks


def training_accuracy(model: MultiTaskTagger, tasks: dict[str, TaskData]) -> dict[str, float]:
    """Sentence exact-match per CRF head, class accuracy for polyphones."""
    acc = {}
    for name, task in tasks.items():
        if name == "polyphone":
            hits = [
                model.classify_polyphone([model.vocab.itos[i] for i in w], idx, n) == c
                for w, idx, c, n in task.examples
            ]
        else:
            hits = [model.tag(name, [model.vocab.itos[i] for i in w]) == list(t) for w, t in task.examples]
        acc[name] = sum(hits) / len(hits)
    return acc


def new_tagger(
    corpora: TaggerCorpora,
    config: TrainConfig,
    tn_inventory: CategoryInventory | None = None,
    pos_inventory: CategoryInventory | None = None,
    max_polyphone_classes: int = 4,
) -> MultiTaskTagger:
    return MultiTaskTagger(
        build_vocabulary(corpora),
        tn_inventory or load_tn_inventory(),
        pos_inventory or load_pos_inventory(),
        config,
        max_polyphone_classes,
    )


def train_tagger(
    corpora: TaggerCorpora,
    config: TrainConfig,
    model: MultiTaskTagger | None = None,
    until_perfect: bool = False,
    check_every: int = 5,
) -> TrainResult:
    """Train the tagger's heads jointly on every non-empty corpus.

    A fresh model (vocabulary from the corpora) is built unless one is
    given. ``until_perfect`` stops as soon as every head fits its training
    data exactly, checked every ``check_every`` epochs.
    """
    model = model or new_tagger(corpora, config)
    tasks = tagger_task_data(model, corpora)
    if not tasks:
        raise ValueError("no training data for any tagger head")

    def perfect(m, epoch):
        return (epoch + 1) % check_every == 0 and all(v == 1.0 for v in training_accuracy(m, tasks).values())

    return train(model, tasks, config, perfect if until_perfect else None)


def g2p_examples(model: Seq2SeqModel, pairs: Sequence[tuple[str, PhonemeSeq]]) -> list[tuple[list[int], list[int]]]:
    return [(model.chars.encode(w), model.phonemes.encode(p)) for w, p in pairs]


def g2p_training_accuracy(model: Seq2SeqModel, pairs: Sequence[tuple[str, PhonemeSeq]]) -> float:
    """Greedy-decoding word exact-match."""
    hits = [tuple(model.phonemes.decode(greedy_decode(model.chars.encode(w), model)[0])) == tuple(p) for w, p in pairs]
    return sum(hits) / len(hits)


def train_g2poov(
    pairs: Sequence[tuple[str, PhonemeSeq]],
    config: TrainConfig,
    chars: CharInventory | None = None,
    phonemes: PhonemeInventory | None = None,
    model: Seq2SeqModel | None = None,
    until_perfect: bool = False,
    check_every: int = 5,
) -> TrainResult:
    model = model or build_seq2seq(chars or load_char_inventory(), phonemes or load_phoneme_inventory(), config)
    data = TaskData(g2p_examples(model, pairs), g2p_loss)

    def perfect(m, epoch):
        return (epoch + 1) % check_every == 0 and g2p_training_accuracy(m, pairs) == 1.0

    return train(model, {"g2poov": data}, config, perfect if until_perfect else None)


# -- evaluation ---------------------------------------------------------------------------


def eval_tn(model: MultiTaskTagger, rules: RuleSet, examples: Sequence[TnExample], use_and: bool = True) -> dict:
    pred = [normalize(e.text, model, rules, use_and).normalized for e in examples]
    return {"sentences": len(examples), "ser": ser(pred, [e.reference for e in examples])}


def eval_pwpp(model: MultiTaskTagger, examples: Sequence[ProsodyExample]) -> dict:
    """Per-level F1 of the merged hierarchical output and of the 4-class baseline."""
    pred, base, gold = [], [], []
    for e in examples:
        pred += predict_prosody(e.words, model, final_break=False).merged
        base += model.tag("pwpp_base", e.words)
        gold += e.levels
    report: dict = {"sentences": len(examples)}
    for lv in (1, 2, 3):
        report[f"f1_#{lv}"] = pwpp_f1(pred, gold, lv)
    for lv in (1, 2, 3):
        report[f"baseline_f1_#{lv}"] = pwpp_f1(base, gold, lv)
    return report


def eval_pos(model: MultiTaskTagger, examples: Sequence[PosExample]) -> dict:
    right = total = exact = 0
    for e in examples:
        pred = pos_tag(e.words, model)
        gold = e.categories()
        right += sum(p == g for p, g in zip(pred, gold))
        total += len(gold)
        exact += pred == gold
    return {"sentences": len(examples), "word_accuracy": right / max(total, 1), "sentence_accuracy": exact / max(len(examples), 1)}


def eval_polyphone(model: MultiTaskTagger, examples: Sequence[PolyphoneExample]) -> dict:
    hits = [model.classify_polyphone(e.words, e.index, e.num_classes) == e.class_id for e in examples]
    return {"items": len(hits), "accuracy": sum(hits) / max(len(hits), 1)}


def oov_predictions(model: Seq2SeqModel, words: Sequence[str], beam: int) -> list[PhonemeSeq]:
    out = []
    for w in words:
        hyps = beam_decode(model.chars.encode(w), model, beam=beam)
        out.append(tuple(model.phonemes.decode(hyps[0][0])))
    return out


def eval_g2poov(model: Seq2SeqModel, pairs: Sequence[tuple[str, PhonemeSeq]], beam: int = 3) -> dict:
    pred = oov_predictions(model, [w for w, _ in pairs], beam)
    return {"words": len(pairs), "beam": beam, "wer": g2p_wer(pred, [p for _, p in pairs])}


def beam_sweep(
    model: Seq2SeqModel, pairs: Sequence[tuple[str, PhonemeSeq]], beams: Sequence[int] = BEAM_SWEEP
) -> list[tuple[int, float]]:
    """WER of the OOV model at each beam size."""
    gold = [p for _, p in pairs]
    return [(k, g2p_wer(oov_predictions(model, [w for w, _ in pairs], k), gold)) for k in beams]


def g2p_ablation(
    sentences: Sequence[Sequence[tuple[str, PhonemeSeq]]],
    lexicon: Lexicon,
    homographs: HomographTable,
    oov_model: Seq2SeqModel | None,
    tagger: MultiTaskTagger | None,
    beam: int = 3,
) -> list[tuple[str, float]]:
    """Corpus WER as resolution stages are switched on one after another."""
    switches = [
        dict(use_oov=False, use_pos=False, use_polyphone=False),
        dict(use_oov=True, use_pos=False, use_polyphone=False),
        dict(use_oov=True, use_pos=True, use_polyphone=False),
        dict(use_oov=True, use_pos=True, use_polyphone=True),
    ]
    report = []
    for stage, flags in zip(ABLATION_STAGES, switches):
        pred, gold = [], []
        for sent in sentences:
            words = [w for w, _ in sent]
            pron = resolve_pronunciations(words, lexicon, homographs, oov_model, tagger, beam=beam, diagnostics=[], **flags)
            pred += [p.phonemes for p in pron]
            gold += [g for _, g in sent]
        report.append((stage, g2p_wer(pred, gold)))
    return report


