"""Command-line interface: ``unifront {frontend,normalize,g2p,train,eval}``."""

from __future__ import annotations

import argparse
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Sequence

from .core import data_path
from .corpora import (
    CorpusError,
    hash_split,
    read_g2p_dict,
    read_g2p_sentences,
    read_polyphone_corpus,
    read_pos_corpus,
    read_prosody_corpus,
    read_tn_corpus,
)
from .g2p.lexicon import LexiconError
from .g2p.resolve import pos_tag, resolve_pronunciations
from .models.checkpoint import CheckpointError
from .models.multitask import ModelNotLoaded, MultiTaskTagger, save_seq2seq
from .pipeline import ConfigError, Frontend, PipelineConfig
from .tasks import (
    BEAM_SWEEP,
    TAGGER_TASKS,
    TaggerCorpora,
    beam_sweep,
    eval_g2poov,
    eval_pos,
    eval_polyphone,
    eval_pwpp,
    eval_tn,
    g2p_ablation,
    train_g2poov,
    train_tagger,
)
from .tn.normalize import normalize
from .tn.rules import RuleFileError

log = logging.getLogger("unifront")

TRAIN_TASKS = TAGGER_TASKS + ("g2poov",)
EVAL_TASKS = TRAIN_TASKS + ("g2p",)

DEFAULT_CORPORA = {
    "tn": "fixtures/tn_toy.tsv",
    "pwpp": "fixtures/prosody_toy.txt",
    "pos": "fixtures/pos_toy.txt",
    "polyphone": "fixtures/polyphone_toy.tsv",
    "g2poov": "g2p_train.dict",
    "g2p": "fixtures/g2p_ablation.tsv",
}

# Errors that end a command with exit status 1.
HARD_ERRORS = (
    ConfigError,
    CorpusError,
    CheckpointError,
    LexiconError,
    RuleFileError,
    ModelNotLoaded,
    OSError,
    ValueError,
    KeyError,
)


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="pipeline INI file")
    p.add_argument("--seed", type=int, help="seed for every random choice (overrides the config)")
    p.add_argument("--beam", type=int, help="beam size for OOV decoding (overrides the config)")
    p.add_argument("--input", type=Path, help="read from FILE instead of standard input")
    p.add_argument("--output", type=Path, help="write to FILE instead of standard output")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="unifront", description="English TTS front-end: text to phoneme-level labels.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("frontend", parents=[common], help="raw text lines to the normative label TSV")
    sub.add_parser("normalize", parents=[common], help="raw text lines to normalized text lines")
    sub.add_parser("g2p", parents=[common], help="word lines to word<TAB>phonemes<TAB>provenance rows")

    tr = sub.add_parser("train", parents=[common], help="train a task head and write a checkpoint")
    tr.add_argument("task", help=f"one of {', '.join(TRAIN_TASKS)}, a comma list of tagger tasks, or 'tagger' for all four")
    tr.add_argument(
        "--corpus", action="append", default=[], metavar="[TASK=]PATH", help="training corpus (bundled fixture by default)"
    )
    tr.add_argument("--init", type=Path, help="continue from this tagger checkpoint (keeps its vocabulary)")
    tr.add_argument("--epochs", type=int, help="maximum number of epochs")
    tr.add_argument("--until-perfect", action="store_true", help="stop once the training data is fitted exactly")
    tr.add_argument("--split", choices=("train", "all"), default="train", help="g2poov: use the hash-split train part or everything")
    tr.add_argument("--class-first", action="store_true", help="TN corpus columns are class<TAB>token<TAB>verbalization")

    ev = sub.add_parser("eval", parents=[common], help="score a checkpoint on a corpus; TSV report on standard output")
    ev.add_argument("task", choices=EVAL_TASKS)
    ev.add_argument("--corpus", type=Path, help="evaluation corpus (bundled fixture by default)")
    ev.add_argument("--checkpoint", type=Path, help="checkpoint to score (default: the one in the config)")
    ev.add_argument("--split", choices=("test", "dev", "train", "all"), default="test", help="g2poov: which hash-split part")
    ev.add_argument("--sweep", action="store_true", help=f"g2poov: report WER for beam sizes {list(BEAM_SWEEP)}")
    ev.add_argument("--class-first", action="store_true", help="TN corpus columns are class<TAB>token<TAB>verbalization")
    return parser


def load_config(args) -> PipelineConfig:
    config = PipelineConfig.from_ini(args.config) if args.config else PipelineConfig()
    if args.seed is not None:
        config.with_seed(args.seed)
    if args.beam is not None:
        if args.beam < 1:
            raise UsageError("--beam must be at least 1")
        config.beam = args.beam
    return config


@contextmanager
def _output(path: Path | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _input_lines(path: Path | None) -> list[str]:
    if path is None:
        return sys.stdin.read().splitlines()
    return path.read_text(encoding="utf-8").splitlines()


def _report(diagnostics: Sequence[str]) -> None:
    for d in diagnostics:
        print(d, file=sys.stderr)


def cmd_frontend(lines: Sequence[str], config: PipelineConfig) -> tuple[str, list[str]]:
    return Frontend.from_config(config).run(lines)


def cmd_normalize(lines: Sequence[str], config: PipelineConfig) -> tuple[str, list[str]]:
    config.check_files(need_models=False)
    tagger = config.load_tagger()
    rules = config.rules()
    out, diags = [], []
    for lineno, line in enumerate(lines, 1):
        result = normalize(line, tagger, rules, config.use_and)
        diags += [f"line {lineno}: {d}" for d in result.diagnostics()]
        out.append(result.normalized + "\n")
    return "".join(out), diags


def cmd_g2p(lines: Sequence[str], config: PipelineConfig) -> tuple[str, list[str]]:
    """Each line is a sentence of words; POS and polyphone context come from the line."""
    frontend = Frontend.from_config(config)
    out, diags = [], []
    for lineno, line in enumerate(lines, 1):
        words = line.split()
        local: list[str] = []
        pos = pos_tag(words, frontend.tagger) if words else []
        prons = resolve_pronunciations(
            words, frontend.lexicon, frontend.homographs, frontend.oov_model, frontend.tagger,
            beam=config.beam, pos=pos, diagnostics=local,
        )
        diags += [f"line {lineno}: {d}" for d in local]
        out += [f"{p.word}\t{' '.join(p.phonemes)}\t{p.provenance}\n" for p in prons]
        out.append("\n")
    return "".join(out), diags


def _corpus_paths(specs: Sequence[str], tasks: Sequence[str]) -> dict[str, Path]:
    paths = {t: data_path(DEFAULT_CORPORA[t]) for t in tasks}
    for spec in specs:
        task, sep, path = spec.partition("=")
        if not sep:
            if len(tasks) != 1:
                raise UsageError("with several tasks, write --corpus TASK=PATH")
            task, path = tasks[0], spec
        if task not in tasks:
            raise UsageError(f"--corpus given for {task!r}, which is not being trained")
        paths[task] = Path(path)
    return paths


def _read_tagger_corpora(paths: dict[str, Path], config: PipelineConfig, class_first: bool) -> TaggerCorpora:
    corpora = TaggerCorpora()
    if "tn" in paths:
        corpora.tn = read_tn_corpus(paths["tn"], config.tn_inventory(), class_first)
    if "pwpp" in paths:
        corpora.pwpp = read_prosody_corpus(paths["pwpp"])
    if "pos" in paths:
        corpora.pos = read_pos_corpus(paths["pos"], config.pos_inventory())
    if "polyphone" in paths:
        corpora.polyphone = read_polyphone_corpus(paths["polyphone"], config.homographs())
    return corpora


def _write_history(path: Path, result) -> None:
    names = list(result.task_history)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(["epoch", "total", *names]) + "\n")
        for epoch, total in enumerate(result.history):
            cells = [str(epoch), f"{total:.6f}"] + [f"{result.task_history[n][epoch]:.6f}" for n in names]
            fh.write("\t".join(cells) + "\n")


def cmd_train(task: str, args, config: PipelineConfig) -> Path:
    """Train and write ``<output>`` plus ``<output>.history.tsv``; returns the checkpoint path."""
    tasks = list(TAGGER_TASKS) if task == "tagger" else task.split(",")
    bad = [t for t in tasks if t not in TRAIN_TASKS]
    if bad or ("g2poov" in tasks and len(tasks) > 1):
        raise UsageError(f"cannot train {task!r}; choose one of {', '.join(TRAIN_TASKS)} or tagger tasks joined by commas")
    train_cfg = config.train
    if args.epochs is not None:
        train_cfg.epochs = args.epochs
    paths = _corpus_paths(args.corpus, tasks)
    output = args.output or Path("g2poov.ckpt" if tasks == ["g2poov"] else "tagger.ckpt")
    if tasks == ["g2poov"]:
        pairs = read_g2p_dict(paths["g2poov"], config.phoneme_inventory(), config.char_inventory(), config.keep_stress)
        if args.split == "train":
            pairs = hash_split(pairs, config.seed)[0]
        result = train_g2poov(
            pairs, train_cfg, config.char_inventory(), config.phoneme_inventory(), until_perfect=args.until_perfect
        )
        save_seq2seq(output, result.model, train_cfg)
    else:
        corpora = _read_tagger_corpora(paths, config, args.class_first)
        model = None
        if args.init is not None:
            model = MultiTaskTagger.load(args.init, config.tn_inventory(), config.pos_inventory())
        result = train_tagger(corpora, train_cfg, model, until_perfect=args.until_perfect)
        result.model.save(output)
    _write_history(Path(str(output) + ".history.tsv"), result)
    log.info("wrote %s after %d epochs", output, len(result.history))
    return output


def cmd_eval(task: str, args, config: PipelineConfig) -> str:
    corpus = args.corpus or data_path(DEFAULT_CORPORA[task])
    if args.checkpoint is not None:
        config.paths["g2poov" if task == "g2poov" else "tagger"] = args.checkpoint
    lines: list[tuple[str, object]] = [("task", task)]
    if task == "g2poov":
        model = config.load_g2poov()
        pairs = read_g2p_dict(corpus, config.phoneme_inventory(), config.char_inventory(), config.keep_stress)
        if args.split != "all":
            pairs = hash_split(pairs, config.seed)[("train", "dev", "test").index(args.split)]
        if args.sweep:
            lines.append(("words", len(pairs)))
            lines += [(f"wer_beam_{k}", wer) for k, wer in beam_sweep(model, pairs)]
        else:
            lines += list(eval_g2poov(model, pairs, config.beam).items())
    elif task == "g2p":
        config.check_files()
        lexicon = config.lexicon()
        sentences = read_g2p_sentences(corpus, config.phoneme_inventory())
        report = g2p_ablation(
            sentences, lexicon, config.homographs(lexicon), config.load_g2poov(), config.load_tagger(), config.beam
        )
        lines.append(("words", sum(len(s) for s in sentences)))
        lines += [(f"wer_{stage}", wer) for stage, wer in report]
    else:
        tagger = config.load_tagger()
        if task == "tn":
            lines += list(eval_tn(tagger, config.rules(), read_tn_corpus(corpus, config.tn_inventory(), args.class_first), config.use_and).items())
        elif task == "pwpp":
            lines += list(eval_pwpp(tagger, read_prosody_corpus(corpus)).items())
        elif task == "pos":
            lines += list(eval_pos(tagger, read_pos_corpus(corpus, config.pos_inventory())).items())
        else:
            lines += list(eval_polyphone(tagger, read_polyphone_corpus(corpus, config.homographs())).items())
    return "".join(f"{k}\t{v:.6f}\n" if isinstance(v, float) else f"{k}\t{v}\n" for k, v in lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(message)s", stream=sys.stderr)
    try:
        config = load_config(args)
        if args.command in ("frontend", "normalize", "g2p"):
            run = {"frontend": cmd_frontend, "normalize": cmd_normalize, "g2p": cmd_g2p}[args.command]
            text, diagnostics = run(_input_lines(args.input), config)
            _report(diagnostics)
            with _output(args.output) as fh:
                fh.write(text)
        elif args.command == "train":
            cmd_train(args.task, args, config)
        else:
            text = cmd_eval(args.task, args, config)
            with _output(args.output) as fh:
                fh.write(text)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"unifront: error: {exc}", file=sys.stderr)
        return 2
    except HARD_ERRORS as exc:
        print(f"unifront: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
