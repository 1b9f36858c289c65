import io
import sys

import pytest

from unifront.align import parse_label
from unifront.cli import main
from unifront.pipeline import ConfigError, PipelineConfig

from conftest import FIXTURES

SMALL_TRAIN = "[train]\nhidden_size = 16\nembed_dim = 16\nmodel_dim = 16\nbatch_size = 8\nepochs = 3\n"


def run(argv, capsys, monkeypatch=None, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_frontend_empty_input(model_dir, capsys, monkeypatch):
    code, out, _ = run(["frontend", "--config", str(model_dir / "pipeline.ini")], capsys, monkeypatch, "")
    assert code == 0 and out == ""


def test_frontend_hello(model_dir, capsys, monkeypatch):
    code, out, _ = run(["frontend", "--config", str(model_dir / "pipeline.ini")], capsys, monkeypatch, "hello\n")
    assert code == 0
    (rows,) = parse_label(out)
    assert [r.phoneme for r in rows] == ["HH", "EH", "L", "OW"]
    assert [int(r.prosody) for r in rows] == [0, 0, 0, 3]


def test_frontend_call_911(model_dir, capsys, monkeypatch, tmp_path):
    src = tmp_path / "in.txt"
    src.write_text("call 911\n")
    dst = tmp_path / "out.tsv"
    code, out, _ = run(
        ["frontend", "--config", str(model_dir / "pipeline.ini"), "--input", str(src), "--output", str(dst)], capsys
    )
    assert code == 0 and out == ""
    (rows,) = parse_label(dst.read_text())
    words = [rows[0].word] + [r.word for a, r in zip(rows, rows[1:]) if r.word_idx != a.word_idx]
    assert words == ["call", "nine", "one", "one"]


def test_normalize(model_dir, capsys, monkeypatch):
    code, out, _ = run(
        ["normalize", "--config", str(model_dir / "pipeline.ini")], capsys, monkeypatch, "i have 3 dvds\n\n"
    )
    assert code == 0
    assert out == "i have three d v ds\n\n"


def test_g2p_command(model_dir, capsys, monkeypatch):
    code, out, _ = run(["g2p", "--config", str(model_dir / "pipeline.ini")], capsys, monkeypatch, "the lead pipe\n")
    assert code == 0
    assert out.splitlines()[1] == "lead\tL EH D\tpolyphone-updated"


def test_usage_errors(capsys, model_dir):
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["eval", "bogus"])
    assert info.value.code == 2
    code, _, err = run(["train", "pos,g2poov", "--config", str(model_dir / "pipeline.ini")], capsys)
    assert code == 2 and "cannot train" in err
    code, _, _ = run(["frontend", "--beam", "0", "--config", str(model_dir / "pipeline.ini")], capsys)
    assert code == 2


def test_missing_checkpoint_is_a_hard_error(tmp_path, capsys, monkeypatch):
    ini = tmp_path / "p.ini"
    ini.write_text("[paths]\ntagger = missing.ckpt\ng2poov = missing.ckpt\n")
    code, out, err = run(["frontend", "--config", str(ini)], capsys, monkeypatch, "hello\n")
    assert code == 1 and out == "" and "does not exist" in err
    code, _, err = run(["frontend"], capsys, monkeypatch, "hello\n")
    assert code == 1 and "checkpoint" in err


def test_train_is_deterministic_and_reloadable(tmp_path, capsys, monkeypatch):
    ini = tmp_path / "p.ini"
    ini.write_text(SMALL_TRAIN)
    histories = []
    for name in ("a", "b"):
        ckpt = tmp_path / f"{name}.ckpt"
        code, _, _ = run(["train", "tagger", "--config", str(ini), "--seed", "7", "--output", str(ckpt)], capsys)
        assert code == 0
        histories.append((tmp_path / f"{name}.ckpt.history.tsv").read_text())
    assert histories[0] == histories[1]
    assert len(histories[0].splitlines()) == 4
    code, _, _ = run(["train", "tagger", "--config", str(ini), "--seed", "8", "--output", str(tmp_path / "c.ckpt")], capsys)
    assert (tmp_path / "c.ckpt.history.tsv").read_text() != histories[0]

    code, out, _ = run(["eval", "pos", "--config", str(ini), "--checkpoint", str(tmp_path / "a.ckpt")], capsys)
    assert code == 0
    report = dict(line.split("\t") for line in out.splitlines())
    assert report["task"] == "pos" and 0.0 <= float(report["word_accuracy"]) <= 1.0


def test_train_g2poov_and_sweep(tmp_path, capsys):
    ini = tmp_path / "p.ini"
    ini.write_text(SMALL_TRAIN)
    ckpt = tmp_path / "g.ckpt"
    code, _, _ = run(
        ["train", "g2poov", "--config", str(ini), "--corpus", str(FIXTURES / "g2p_toy.dict"), "--split", "all",
         "--output", str(ckpt)],
        capsys,
    )
    assert code == 0
    code, out, _ = run(
        ["eval", "g2poov", "--config", str(ini), "--checkpoint", str(ckpt), "--corpus", str(FIXTURES / "g2p_test.dict"),
         "--split", "all", "--sweep"],
        capsys,
    )
    assert code == 0
    report = dict(line.split("\t") for line in out.splitlines())
    assert report["words"] == "30"
    assert [k for k in report if k.startswith("wer_beam_")] == [f"wer_beam_{k}" for k in (1, 2, 3, 5, 10)]


def test_eval_reports(model_dir, capsys):
    ini = str(model_dir / "pipeline.ini")
    code, out, _ = run(["eval", "tn", "--config", ini], capsys)
    assert code == 0 and "ser\t0.000000" in out
    code, out, _ = run(["eval", "pwpp", "--config", ini], capsys)
    assert code == 0 and "f1_#1\t1.000000" in out
    code, out, _ = run(["eval", "g2p", "--config", ini], capsys)
    assert code == 0
    report = dict(line.split("\t") for line in out.splitlines())
    wers = [float(report[k]) for k in ("wer_lexicon", "wer_+g2poov", "wer_+pos", "wer_+polyphone")]
    assert wers == sorted(wers, reverse=True) and len(set(wers)) == 4


def test_corrupt_corpus_reports_line(tmp_path, capsys, model_dir):
    bad = tmp_path / "bad.txt"
    bad.write_text("i/PRON read/NOPE\n")
    code, _, err = run(["eval", "pos", "--config", str(model_dir / "pipeline.ini"), "--corpus", str(bad)], capsys)
    assert code == 1 and f"{bad}:1:" in err


@pytest.mark.parametrize(
    "text",
    [
        "[bogus]\nx = 1\n",
        "[options]\ncolour = red\n",
        "[options]\nbeam = many\n",
        "[train]\nlearning_rate = fast\n",
        "[train]\nfoo = 1\n",
        "[paths]\nunknown = x\n",
        "[options]\nbeam = 0\n",
    ],
)
def test_config_errors(tmp_path, text):
    ini = tmp_path / "p.ini"
    ini.write_text(text)
    with pytest.raises(ConfigError):
        PipelineConfig.from_ini(ini)


def test_config_values(tmp_path):
    ini = tmp_path / "p.ini"
    ini.write_text("[paths]\nlexicon = lex.dict\n[options]\nbeam = 5\nfinal_break = no\n[train]\nepochs = 7\n")
    config = PipelineConfig.from_ini(ini)
    assert config.paths["lexicon"] == tmp_path / "lex.dict"
    assert config.beam == 5 and config.final_break is False and config.train.epochs == 7
    with pytest.raises(ConfigError):
        PipelineConfig.from_ini(tmp_path / "absent.ini")
