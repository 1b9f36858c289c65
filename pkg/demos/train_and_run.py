"""Train the fixture models, then run the whole front-end on the fixture sentences.

    python demos/train_and_run.py

Writes demos/out/{tagger,g2poov}.ckpt and prints the normative label of each
sentence in the bundled frontend fixture.
"""

import logging
import time
from pathlib import Path

from unifront.core import data_path
from unifront.corpora import (
    read_g2p_dict,
    read_polyphone_corpus,
    read_pos_corpus,
    read_prosody_corpus,
    read_tn_corpus,
)
from unifront.models import TrainConfig, save_seq2seq
from unifront.pipeline import Frontend, PipelineConfig
from unifront.tasks import TaggerCorpora, train_g2poov, train_tagger

HERE = Path(__file__).parent
FIXTURES = data_path("fixtures")


def main() -> None:
    # Diagnostics are collected per sentence below; keep the log quiet.
    logging.basicConfig(level=logging.ERROR)
    config = PipelineConfig.from_ini(HERE / "pipeline.ini")
    out = HERE / "out"
    out.mkdir(exist_ok=True)

    corpora = TaggerCorpora(
        read_tn_corpus(FIXTURES / "tn_toy.tsv", config.tn_inventory()),
        read_prosody_corpus(FIXTURES / "prosody_toy.txt"),
        read_pos_corpus(FIXTURES / "pos_toy.txt", config.pos_inventory()),
        read_polyphone_corpus(FIXTURES / "polyphone_toy.tsv", config.homographs()),
    )
    t0 = time.perf_counter()
    tagger = train_tagger(corpora, config.train, until_perfect=True)
    print(f"tagger: {len(tagger.history)} epochs, {time.perf_counter() - t0:.1f}s")
    tagger.model.save(config.paths["tagger"])

    # The seq2seq model trains with bigger batches; everything else is shared.
    g2p_cfg = TrainConfig(**{**config.train.to_dict(), "batch_size": 20})
    pairs = read_g2p_dict(FIXTURES / "g2p_toy.dict", config.phoneme_inventory(), config.char_inventory())
    t0 = time.perf_counter()
    g2p = train_g2poov(pairs, g2p_cfg, config.char_inventory(), config.phoneme_inventory(), until_perfect=True)
    print(f"g2poov: {len(g2p.history)} epochs, {time.perf_counter() - t0:.1f}s")
    save_seq2seq(config.paths["g2poov"], g2p.model, g2p_cfg)

    frontend = Frontend.from_config(config)
    lines = (FIXTURES / "frontend.txt").read_text().splitlines()
    for line in lines[:4]:
        result = frontend.process(line)
        print(f"\n{line!r} -> {result.normalized.normalized!r}")
        for word, pron, level in zip(result.words, result.pronunciations, result.prosody):
            print(f"  {word:<10} {' '.join(pron.phonemes):<22} #{int(level)}  {pron.provenance}")

    tsv, diagnostics = frontend.run(lines)
    (out / "frontend.tsv").write_text(tsv)
    print(f"\nfull label for {len(lines)} sentences written to {out / 'frontend.tsv'}")
    for d in diagnostics:
        print("  note:", d)


if __name__ == "__main__":
    main()
