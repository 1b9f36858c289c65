"""Train the OOV model on the bundled CMUdict subset and sweep the beam size.

    python demos/beam_sweep.py [--epochs 40] [--dim 128]

The words are hash-split 80/10/10; the model trains on the first part and
the sweep decodes the held-out test part at beam sizes 1, 2, 3, 5 and 10.
Expect a few minutes on a CPU. Word error rates at this scale are high:
a few thousand training words are far from enough for English spelling.
"""

import argparse
import logging
import time

from unifront.core import data_path, load_char_inventory, load_phoneme_inventory
from unifront.corpora import hash_split, read_g2p_dict
from unifront.g2p import g2p_oov
from unifront.models import TrainConfig, save_seq2seq
from unifront.tasks import beam_sweep, train_g2poov


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--epochs", type=int, default=40)
    parser.add_argument("--dim", type=int, default=128)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--save", help="write the trained checkpoint here")
    args = parser.parse_args()
    logging.basicConfig(level=logging.ERROR)

    chars, phonemes = load_char_inventory(), load_phoneme_inventory()
    pairs = read_g2p_dict(data_path("g2p_train.dict"), phonemes, chars)
    train, dev, test = hash_split(pairs, seed=args.seed)
    print(f"{len(pairs)} words: {len(train)} train / {len(dev)} dev / {len(test)} test")

    config = TrainConfig(model_dim=args.dim, epochs=args.epochs, batch_size=64, learning_rate=3e-3, seed=args.seed)
    t0 = time.perf_counter()
    result = train_g2poov(train, config, chars, phonemes)
    print(f"trained {args.epochs} epochs in {time.perf_counter() - t0:.0f}s, final loss {result.history[-1]:.3f}")
    if args.save:
        save_seq2seq(args.save, result.model, config)

    t0 = time.perf_counter()
    print("\nbeam\tWER")
    for k, wer in beam_sweep(result.model, test):
        print(f"{k}\t{100 * wer:.2f}%")
    print(f"(sweep took {time.perf_counter() - t0:.0f}s)")

    print("\nunseen words:")
    for word in ("zoin", "wombat", "jazz", "blorple"):
        print(f"  {word:<8} {' '.join(g2p_oov(word, result.model, k=3))}")


if __name__ == "__main__":
    main()
