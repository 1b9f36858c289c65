"""Pipeline configuration and the end-to-end front-end."""

from __future__ import annotations

import configparser
import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Iterable

from .align import NormativeRow, build_normative_label, format_label
from .core import (
    CategoryInventory,
    ProsodyLevel,
    data_path,
    load_char_inventory,
    load_phoneme_inventory,
)
from .g2p.lexicon import HomographTable, Lexicon
from .g2p.resolve import WordPronunciation, pos_tag, resolve_pronunciations
from .models.multitask import MultiTaskTagger, load_seq2seq
from .models.seq2seq import Seq2SeqModel
from .models.training import TrainConfig
from .pwpp import predict_prosody
from .tn.normalize import NormalizedSentence, normalize
from .tn.rules import RuleSet

log = logging.getLogger(__name__)

_PATH_KEYS = (
    "tn_categories",
    "pos_categories",
    "phonemes",
    "chars",
    "lexicon",
    "homographs",
    "rules",
    "hotwords",
    "tagger",
    "g2poov",
)
_BUNDLED = {
    "tn_categories": "tn_categories.ini",
    "pos_categories": "pos_categories.ini",
    "phonemes": "phonemes.txt",
    "chars": "chars.txt",
    "lexicon": "lexicon.dict",
    "homographs": "homographs.tsv",
    "rules": "tn_rules.tsv",
    "hotwords": "hotwords.tsv",
}


class ConfigError(ValueError):
    pass


@dataclass
class PipelineConfig:
    """Every file the pipeline reads plus its switches.

    Paths default to the bundled data; the two checkpoints have no default.
    """

    paths: dict[str, Path | None] = field(default_factory=dict)
    beam: int = 3
    keep_stress: bool = False
    final_break: bool = True
    use_and: bool = True
    seed: int = 0
    train: TrainConfig = field(default_factory=TrainConfig)

    def __post_init__(self) -> None:
        resolved = {k: data_path(v) for k, v in _BUNDLED.items()}
        resolved.update({"tagger": None, "g2poov": None})
        for key, value in self.paths.items():
            if key not in _PATH_KEYS:
                raise ConfigError(f"unknown path key {key!r}")
            resolved[key] = Path(value) if value is not None else None
        self.paths = resolved
        if self.beam < 1:
            raise ConfigError("beam size must be at least 1")

    @classmethod
    def from_ini(cls, path: str | Path) -> "PipelineConfig":
        """Read ``[paths]``, ``[options]`` and ``[train]`` sections.

        Relative paths are taken relative to the INI file.
        """
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file {path} does not exist")
        parser = configparser.ConfigParser()
        parser.read(path, encoding="utf-8")
        unknown = set(parser.sections()) - {"paths", "options", "train"}
        if unknown:
            raise ConfigError(f"{path}: unknown sections {sorted(unknown)}")
        base = path.parent
        paths = {}
        if parser.has_section("paths"):
            for key, value in parser.items("paths"):
                paths[key] = (base / value) if value else None
        kwargs = {}
        try:
            if parser.has_section("options"):
                opts = parser["options"]
                for key in opts:
                    if key in ("beam", "seed"):
                        kwargs[key] = opts.getint(key)
                    elif key in ("keep_stress", "final_break", "use_and"):
                        kwargs[key] = opts.getboolean(key)
                    else:
                        raise ConfigError(f"{path}: unknown option {key!r}")
            train = {}
            if parser.has_section("train"):
                types = {f.name: f.type for f in fields(TrainConfig)}
                for key, value in parser.items("train"):
                    if key not in types:
                        raise ConfigError(f"{path}: unknown training option {key!r}")
                    kind = types[key]
                    if kind == "bool":
                        train[key] = parser["train"].getboolean(key)
                    else:
                        train[key] = {"int": int, "float": float}[kind](value)
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"{path}: {exc}") from None
        train.setdefault("seed", kwargs.get("seed", 0))
        return cls(paths=paths, train=TrainConfig(**train), **kwargs)

    def with_seed(self, seed: int) -> "PipelineConfig":
        self.seed = seed
        self.train.seed = seed
        return self

    def check_files(self, need_models: bool = True) -> None:
        for key, value in self.paths.items():
            if value is None:
                if need_models and key in ("tagger", "g2poov"):
                    raise ConfigError(f"no {key} checkpoint configured")
                continue
            if not value.is_file():
                raise ConfigError(f"{key} file {value} does not exist")

    def tn_inventory(self) -> CategoryInventory:
        inv = CategoryInventory.from_config(self.paths["tn_categories"])
        if len(inv.categories) != 19:
            raise ConfigError(f"TN inventory must have 19 categories, got {len(inv.categories)}")
        return inv

    def pos_inventory(self) -> CategoryInventory:
        inv = CategoryInventory.from_config(self.paths["pos_categories"])
        if len(inv.categories) != 24:
            raise ConfigError(f"POS inventory must have 24 categories, got {len(inv.categories)}")
        return inv

    def phoneme_inventory(self):
        return load_phoneme_inventory(self.paths["phonemes"])

    def char_inventory(self):
        return load_char_inventory(self.paths["chars"])

    def lexicon(self) -> Lexicon:
        return Lexicon.load(self.paths["lexicon"], self.phoneme_inventory(), self.keep_stress)

    def homographs(self, lexicon: Lexicon | None = None) -> HomographTable:
        return HomographTable.load(self.paths["homographs"], lexicon, self.pos_inventory())

    def rules(self) -> RuleSet:
        return RuleSet.load(self.paths["rules"], self.paths["hotwords"], self.tn_inventory().categories)

    def load_tagger(self) -> MultiTaskTagger:
        if self.paths["tagger"] is None:
            raise ConfigError("no tagger checkpoint configured")
        return MultiTaskTagger.load(self.paths["tagger"], self.tn_inventory(), self.pos_inventory())

    def load_g2poov(self) -> Seq2SeqModel:
        if self.paths["g2poov"] is None:
            raise ConfigError("no g2poov checkpoint configured")
        return load_seq2seq(self.paths["g2poov"], self.char_inventory(), self.phoneme_inventory())[0]


def is_spoken_token(token: str) -> bool:
    """Tokens with a letter or digit are pronounced; the rest is punctuation."""
    return any(ch.isalnum() for ch in token)


@dataclass
class SentenceResult:
    text: str
    normalized: NormalizedSentence
    words: list[str]
    prosody: list[ProsodyLevel]
    pos: list[str]
    pronunciations: list[WordPronunciation]
    rows: list[NormativeRow]
    diagnostics: list[str]


class Frontend:
    """Raw text to normative labels: normalize, tag, resolve pronunciations, align."""

    def __init__(
        self,
        tagger: MultiTaskTagger,
        oov_model: Seq2SeqModel | None,
        lexicon: Lexicon,
        homographs: HomographTable,
        rules: RuleSet,
        beam: int = 3,
        final_break: bool = True,
        use_and: bool = True,
    ):
        self.tagger = tagger
        self.oov_model = oov_model
        self.lexicon = lexicon
        self.homographs = homographs
        self.rules = rules
        self.beam = beam
        self.final_break = final_break
        self.use_and = use_and

    @classmethod
    def from_config(cls, config: PipelineConfig) -> "Frontend":
        config.check_files()
        lexicon = config.lexicon()
        return cls(
            config.load_tagger(),
            config.load_g2poov(),
            lexicon,
            config.homographs(lexicon),
            config.rules(),
            config.beam,
            config.final_break,
            config.use_and,
        )

    def process(self, text: str) -> SentenceResult:
        norm = normalize(text, self.tagger, self.rules, self.use_and)
        diags = list(norm.diagnostics())
        tokens = norm.words
        merged = list(predict_prosody(tokens, self.tagger, final_break=False).merged) if tokens else []
        # Punctuation is not pronounced; its break moves onto the word before it.
        words: list[str] = []
        prosody: list[ProsodyLevel] = []
        for tok, level in zip(tokens, merged):
            if is_spoken_token(tok):
                words.append(tok)
                prosody.append(level)
            elif prosody:
                prosody[-1] = max(prosody[-1], level)
        if self.final_break and prosody:
            prosody[-1] = ProsodyLevel.INTONATION
        pos = pos_tag(words, self.tagger) if words else []
        prons = resolve_pronunciations(
            words,
            self.lexicon,
            self.homographs,
            self.oov_model,
            self.tagger,
            beam=self.beam,
            pos=pos,
            diagnostics=diags,
        )
        rows = build_normative_label(words, [p.phonemes for p in prons], prosody, pos, [p.provenance for p in prons])
        return SentenceResult(text, norm, words, prosody, pos, prons, rows, diags)

    def run(self, lines: Iterable[str]) -> tuple[str, list[str]]:
        """Normative label TSV with one block per input line, plus diagnostics.

        A line that fails yields an empty block and a diagnostic.
        """
        blocks = []
        diagnostics = []
        for lineno, line in enumerate(lines, 1):
            line = line.rstrip("\r\n")
            try:
                result = self.process(line)
            except Exception as exc:  # one bad line must not stop the batch
                diagnostics.append(f"line {lineno}: {type(exc).__name__}: {exc}")
                blocks.append([])
                continue
            diagnostics += [f"line {lineno}: {d}" for d in result.diagnostics]
            blocks.append(result.rows)
        return format_label(blocks), diagnostics
