import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from unifront.core import (  # noqa: E402
    data_path,
    load_char_inventory,
    load_phoneme_inventory,
    load_pos_inventory,
    load_tn_inventory,
)
from unifront.corpora import (  # noqa: E402
    read_g2p_dict,
    read_polyphone_corpus,
    read_pos_corpus,
    read_prosody_corpus,
    read_tn_corpus,
)
from unifront.g2p import HomographTable, Lexicon  # noqa: E402
from unifront.models import TrainConfig, save_seq2seq  # noqa: E402
from unifront.pipeline import Frontend, PipelineConfig  # noqa: E402
from unifront.tasks import TaggerCorpora, train_g2poov, train_tagger  # noqa: E402
from unifront.tn import RuleSet  # noqa: E402

FIXTURES = data_path("fixtures")
TEST_DATA = Path(__file__).parent / "data"

# Small enough to overfit the toy corpora in seconds on a laptop CPU.
TAGGER_CONFIG = dict(hidden_size=64, embed_dim=64, learning_rate=3e-3, batch_size=8, epochs=500)
G2P_CONFIG = dict(model_dim=64, learning_rate=3e-3, batch_size=20, epochs=500)


@pytest.fixture(scope="session")
def tn_inv():
    return load_tn_inventory()


@pytest.fixture(scope="session")
def pos_inv():
    return load_pos_inventory()


@pytest.fixture(scope="session")
def phonemes():
    return load_phoneme_inventory()


@pytest.fixture(scope="session")
def chars():
    return load_char_inventory()


@pytest.fixture(scope="session")
def lexicon(phonemes):
    return Lexicon.load(phonemes=phonemes)


@pytest.fixture(scope="session")
def homographs(lexicon, pos_inv):
    return HomographTable.load(lexicon=lexicon, pos_inventory=pos_inv)


@pytest.fixture(scope="session")
def rules():
    return RuleSet.default()


@pytest.fixture(scope="session")
def corpora(tn_inv, pos_inv, homographs):
    return TaggerCorpora(
        read_tn_corpus(FIXTURES / "tn_toy.tsv", tn_inv),
        read_prosody_corpus(FIXTURES / "prosody_toy.txt"),
        read_pos_corpus(FIXTURES / "pos_toy.txt", pos_inv),
        read_polyphone_corpus(FIXTURES / "polyphone_toy.tsv", homographs),
    )


@pytest.fixture(scope="session")
def g2p_toy_pairs(phonemes, chars):
    return read_g2p_dict(FIXTURES / "g2p_toy.dict", phonemes, chars)


@pytest.fixture(scope="session")
def trained_tagger(corpora):
    """Joint overfit of the TN, prosody, POS and polyphone heads; returns (result, seconds)."""
    t0 = time.perf_counter()
    result = train_tagger(corpora, TrainConfig(**TAGGER_CONFIG), until_perfect=True)
    return result, time.perf_counter() - t0


@pytest.fixture(scope="session")
def tagger(trained_tagger):
    return trained_tagger[0].model


@pytest.fixture(scope="session")
def trained_g2p(g2p_toy_pairs, chars, phonemes):
    t0 = time.perf_counter()
    result = train_g2poov(g2p_toy_pairs, TrainConfig(**G2P_CONFIG), chars, phonemes, until_perfect=True)
    return result, time.perf_counter() - t0


@pytest.fixture(scope="session")
def oov_model(trained_g2p):
    return trained_g2p[0].model


@pytest.fixture(scope="session")
def model_dir(tmp_path_factory, tagger, oov_model):
    d = tmp_path_factory.mktemp("models")
    tagger.save(d / "tagger.ckpt")
    save_seq2seq(d / "g2poov.ckpt", oov_model, TrainConfig(**G2P_CONFIG))
    (d / "pipeline.ini").write_text("[paths]\ntagger = tagger.ckpt\ng2poov = g2poov.ckpt\n")
    return d


@pytest.fixture(scope="session")
def pipeline_config(model_dir):
    return PipelineConfig.from_ini(model_dir / "pipeline.ini")


@pytest.fixture(scope="session")
def frontend(pipeline_config):
    return Frontend.from_config(pipeline_config)


# -- acceptance summary -------------------------------------------------------------

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[report.nodeid] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _ACCEPTANCE.items():
        terminalreporter.write_line(f"{outcome}  {nodeid.split('::')[-1]}")
