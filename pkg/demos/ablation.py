"""Switch the pronunciation stages on one at a time and watch the WER fall.

    python demos/train_and_run.py   # once, to create demos/out/*.ckpt
    python demos/ablation.py

Scores the bundled ablation sentences with the lexicon alone, then adding
the OOV model, the POS update and the polyphone update. Each sentence is
printed with the words every stage still gets wrong.
"""

import logging
from pathlib import Path

from unifront.core import data_path
from unifront.corpora import read_g2p_sentences
from unifront.g2p import resolve_pronunciations
from unifront.pipeline import PipelineConfig
from unifront.tasks import ABLATION_STAGES, g2p_ablation

HERE = Path(__file__).parent

SWITCHES = [
    dict(use_oov=False, use_pos=False, use_polyphone=False),
    dict(use_oov=True, use_pos=False, use_polyphone=False),
    dict(use_oov=True, use_pos=True, use_polyphone=False),
    dict(use_oov=True, use_pos=True, use_polyphone=True),
]


def main() -> None:
    logging.basicConfig(level=logging.ERROR)
    config = PipelineConfig.from_ini(HERE / "pipeline.ini")
    config.check_files()
    lexicon = config.lexicon()
    homographs = config.homographs(lexicon)
    tagger, oov = config.load_tagger(), config.load_g2poov()
    sentences = read_g2p_sentences(data_path("fixtures/g2p_ablation.tsv"), config.phoneme_inventory())

    for stage, wer in g2p_ablation(sentences, lexicon, homographs, oov, tagger, config.beam):
        print(f"{stage:<12} WER {100 * wer:5.1f}%")

    print()
    for sentence in sentences:
        words = [w for w, _ in sentence]
        row = []
        for stage, switches in zip(ABLATION_STAGES, SWITCHES):
            prons = resolve_pronunciations(words, lexicon, homographs, oov, tagger, diagnostics=[], **switches)
            wrong = [p.word for p, (_, gold) in zip(prons, sentence) if p.phonemes != gold]
            row.append(",".join(wrong) or "-")
        print(f"{' '.join(words):<36} " + "  ".join(f"{s}:{r}" for s, r in zip(ABLATION_STAGES, row)))


if __name__ == "__main__":
    main()
