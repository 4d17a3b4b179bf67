import hashlib
import json

import pytest

from wlstream.cli import main
from wlstream.graphs import load_corpus, write_corpus
from wlstream.harness import parse_report_csv

from conftest import graph
from wlstream.graphs import Corpus


GEN = ["gen", "--seed", "3", "--days", "8", "--per-day", "10"]


def sha(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


def gen_corpus(tmp_path, name="c.jsonl", extra=()):
    out = tmp_path / name
    assert main(GEN + list(extra) + ["--out", str(out)]) == 0
    return out


def test_gen_writes_corpus_and_manifest(tmp_path, capsys):
    out = gen_corpus(tmp_path)
    assert main(GEN + ["--out", str(tmp_path / "c2.jsonl")]) == 0
    assert sha(out) == sha(tmp_path / "c2.jsonl")
    corpus = load_corpus(str(out))
    assert len(corpus) == 80
    assert "wrote 80 graphs" in capsys.readouterr().out

    manifest = json.loads((tmp_path / "c.jsonl.manifest.json").read_text())
    assert manifest["tool"] == "wlstream"
    assert manifest["command"] == "gen"
    assert manifest["flags"]["seed"] == 3
    assert manifest["corpus_sha256"] == sha(out)


def test_gen_bad_fraction_usage_error(tmp_path, capsys):
    code = main(GEN + ["--benign-fraction", "1.5", "--out", str(tmp_path / "x")])
    assert code == 1
    assert "usage error" in capsys.readouterr().err


def test_run_online_report(tmp_path, capsys):
    corpus = gen_corpus(tmp_path)
    out = tmp_path / "rep.csv"
    args = ["run", "--corpus", str(corpus), "--regimen", "online-variable",
            "--algo", "pa", "--h", "1", "--out", str(out)]
    assert main(args) == 0
    assert "accuracy=" in capsys.readouterr().out
    rep = parse_report_csv(out.read_text())
    assert rep.days() == list(range(8))
    assert rep.total_samples == 80
    # Repeat run is byte-identical.
    out2 = tmp_path / "rep2.csv"
    assert main(args[:-1] + [str(out2)]) == 0
    assert out.read_bytes() == out2.read_bytes()


def test_run_batch_report(tmp_path):
    corpus = gen_corpus(tmp_path)
    out = tmp_path / "daily.csv"
    assert main(["run", "--corpus", str(corpus), "--regimen", "daily",
                 "--h", "1", "--epochs", "30", "--out", str(out)]) == 0
    rep = parse_report_csv(out.read_text())
    assert rep.days() == list(range(1, 8))


def test_run_unknown_algo_usage_error(tmp_path, capsys):
    corpus = gen_corpus(tmp_path)
    code = main(["run", "--corpus", str(corpus), "--regimen", "online-variable",
                 "--algo", "rf", "--out", str(tmp_path / "x.csv")])
    assert code == 1
    assert "usage error" in capsys.readouterr().err


def test_run_missing_corpus_data_error(tmp_path, capsys):
    code = main(["run", "--corpus", str(tmp_path / "nope.jsonl"),
                 "--regimen", "once", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "data error" in capsys.readouterr().err


def test_compare(tmp_path, capsys):
    corpus = gen_corpus(tmp_path)
    a = tmp_path / "once.csv"
    b = tmp_path / "daily.csv"
    for reg, path in (("once", a), ("daily", b)):
        assert main(["run", "--corpus", str(corpus), "--regimen", reg,
                     "--h", "1", "--epochs", "30", "--out", str(path)]) == 0
    out = tmp_path / "cmp.csv"
    assert main(["compare", "--reports", str(a), str(b), "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "once accuracy=" in printed and "daily accuracy=" in printed
    assert out.read_text().startswith("day,regimen,cumulative_error_rate\n")


def test_compare_single_report_usage_error(tmp_path, capsys):
    corpus = gen_corpus(tmp_path)
    a = tmp_path / "a.csv"
    main(["run", "--corpus", str(corpus), "--regimen", "online-variable",
          "--h", "1", "--out", str(a)])
    assert main(["compare", "--reports", str(a), "--out", str(tmp_path / "c")]) == 1


def test_compare_mismatched_days_data_error(tmp_path, capsys):
    corpus = gen_corpus(tmp_path)
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    main(["run", "--corpus", str(corpus), "--regimen", "online-variable",
          "--h", "1", "--out", str(a)])
    main(["run", "--corpus", str(corpus), "--regimen", "once",
          "--h", "1", "--epochs", "30", "--out", str(b)])
    code = main(["compare", "--reports", str(a), str(b), "--out", str(tmp_path / "c")])
    assert code == 2


def test_delays_outputs(tmp_path):
    corpus = gen_corpus(tmp_path)
    prefix = str(tmp_path / "drift_")
    assert main(["delays", "--corpus", str(corpus), "--out-prefix", prefix]) == 0
    for suffix in ("delays.csv", "cdf_min.csv", "ccdf_max.csv", "manifest.json"):
        assert (tmp_path / f"drift_{suffix}").exists()
    assert json.loads((tmp_path / "drift_manifest.json").read_text())["command"] == "delays"


def test_delays_untagged_malware_data_error(tmp_path, capsys):
    c = Corpus(
        graphs=(graph("orphan", ["x"], day=0, label=1),),
        name="t",
        day_count=1,
    )
    path = tmp_path / "bad.jsonl"
    with open(path, "w") as f:
        write_corpus(c, f)
    code = main(["delays", "--corpus", str(path), "--out-prefix", str(tmp_path / "d_")])
    assert code == 2
    assert "orphan" in capsys.readouterr().err


def test_vocab_dump(tmp_path, capsys):
    corpus = gen_corpus(tmp_path)
    out = tmp_path / "vocab.tsv"
    capsys.readouterr()  # discard gen output
    assert main(["vocab", "--corpus", str(corpus), "--h", "1", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    n = int(printed.split()[0])
    assert n > 0
    assert len(out.read_text().splitlines()) == n


def test_unknown_subcommand_usage_error(capsys):
    assert main(["frobnicate"]) == 1
