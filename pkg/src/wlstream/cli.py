"""Command-line front end: gen / run / compare / delays / vocab.

Every invocation writes a manifest next to its output recording the resolved
flags and the corpus digest, enough to reproduce the run bit-exactly.
Exit codes: 0 success, 1 usage error, 2 data error.
"""

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__, drift, harness, synth, wl
from .batch import HINGE, LOGISTIC, TrainConfig
from .graphs import CorpusFormatError, load_corpus, save_corpus
from .online import ALGORITHMS
from .synth import GenerationError, SynthConfig


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_manifest(path, command, args, corpus_path):
    flags = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    manifest = {
        "tool": "wlstream",
        "version": __version__,
        "command": command,
        "flags": flags,
        "corpus_sha256": _sha256(corpus_path),
    }
    Path(path).write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")


def _synth_config(args) -> SynthConfig:
    return SynthConfig(
        seed=args.seed,
        days=args.days,
        samples_per_day=args.per_day,
        family_count=args.family_count,
        motif_size=args.motif_size,
        noise_nodes_min=args.noise_min,
        noise_nodes_max=args.noise_max,
        label_alphabet_base=args.alphabet_base,
        new_labels_per_day=args.new_labels_per_day,
        family_birth_rate=args.birth_rate,
        family_lifetime_min=args.lifetime_min,
        family_lifetime_max=args.lifetime_max,
        newborn_burst=args.newborn_burst,
        benign_fraction=args.benign_fraction,
        name=args.name,
    )


def cmd_gen(args) -> int:
    try:
        config = _synth_config(args)
    except ValueError as e:
        raise UsageError(str(e))
    corpus = synth.stationary_variant(config) if args.stationary else synth.generate(config)
    save_corpus(corpus, args.out)
    _write_manifest(args.out + ".manifest.json", "gen", args, args.out)
    print(f"wrote {len(corpus)} graphs to {args.out}")
    return 0


def cmd_run(args) -> int:
    corpus = load_corpus(args.corpus)
    wl_config = wl.WlConfig(h=args.h)
    regimen = harness.RegimenSpec(
        kind=args.regimen,
        window_days=args.window,
        fixed_vocab_day=args.fixed_vocab_day,
    )
    if args.regimen in harness.ONLINE_KINDS:
        report = harness.run_online(
            corpus, wl_config, args.algo, regimen, learning_rate=args.learning_rate
        )
    else:
        train_config = TrainConfig(
            epochs=args.epochs,
            learning_rate=args.batch_lr,
            l2=args.l2,
            seed=args.seed,
            loss=args.loss,
        )
        report = harness.run_batch_regimen(corpus, wl_config, regimen, train_config)
    Path(args.out).write_text(harness.report_to_csv(report))
    _write_manifest(args.out + ".manifest.json", "run", args, args.corpus)
    print(f"accuracy={report.accuracy:.6f}")
    return 0


def cmd_compare(args) -> int:
    if len(args.reports) < 2:
        raise UsageError("compare needs at least 2 report files")
    reports = []
    for path in args.reports:
        rep = harness.parse_report_csv(Path(path).read_text())
        reports.append((Path(path).stem, rep))
    cmp = harness.compare(reports)
    Path(args.out).write_text(harness.comparison_to_csv(cmp))
    _write_manifest(args.out + ".manifest.json", "compare", args, args.reports[0])
    for name, acc in cmp.ranking:
        print(f"{name} accuracy={acc:.6f}")
    return 0


def cmd_delays(args) -> int:
    corpus = load_corpus(args.corpus)
    delays = drift.compute_delays(corpus, latest_malware_only=args.latest_malware_only)
    prefix = args.out_prefix
    Path(prefix + "delays.csv").write_text(drift.delays_to_csv(delays))
    Path(prefix + "cdf_min.csv").write_text(
        drift.distribution_to_csv(drift.cdf(delays.delta_mins()))
    )
    Path(prefix + "ccdf_max.csv").write_text(
        drift.distribution_to_csv(drift.ccdf(delays.delta_maxs()))
    )
    _write_manifest(prefix + "manifest.json", "delays", args, args.corpus)
    print(f"analyzed {len(delays.per_sample)} malware samples")
    return 0


def cmd_vocab(args) -> int:
    corpus = load_corpus(args.corpus)
    vocab = wl.extract_vocab(corpus.graphs, wl.WlConfig(h=args.h))
    with open(args.out, "w") as f:
        wl.dump_vocab(vocab, f)
    _write_manifest(args.out + ".manifest.json", "vocab", args, args.corpus)
    print(f"{len(vocab)} features")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="wlstream", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a synthetic corpus")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--days", type=int, default=60)
    p.add_argument("--per-day", type=int, default=50)
    p.add_argument("--family-count", type=int, default=4)
    p.add_argument("--motif-size", type=int, default=5)
    p.add_argument("--noise-min", type=int, default=5)
    p.add_argument("--noise-max", type=int, default=15)
    p.add_argument("--alphabet-base", type=int, default=30)
    p.add_argument("--new-labels-per-day", type=int, default=2)
    p.add_argument("--birth-rate", type=float, default=0.6)
    p.add_argument("--lifetime-min", type=int, default=20)
    p.add_argument("--lifetime-max", type=int, default=50)
    p.add_argument("--newborn-burst", type=int, default=4)
    p.add_argument("--benign-fraction", type=float, default=0.5)
    p.add_argument("--stationary", action="store_true", help="no-drift control corpus")
    p.add_argument("--name", default="synth")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="evaluate one regimen over a corpus stream")
    p.add_argument("--corpus", required=True)
    p.add_argument(
        "--regimen",
        required=True,
        choices=harness.ONLINE_KINDS + harness.BATCH_KINDS,
    )
    p.add_argument("--algo", choices=ALGORITHMS, default="pa")
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--fixed-vocab-day", type=int, default=0)
    p.add_argument("--learning-rate", type=float, default=1.0)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--batch-lr", type=float, default=0.5)
    p.add_argument("--l2", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--loss", choices=(HINGE, LOGISTIC), default=HINGE)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="align report CSVs and rank accuracies")
    p.add_argument("--reports", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("delays", help="familial variant-delay analysis")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--latest-malware-only", action="store_true")
    p.set_defaults(func=cmd_delays)

    p = sub.add_parser("vocab", help="dump the feature vocabulary of a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_vocab)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except (CorpusFormatError, drift.DriftAnalysisError, GenerationError) as e:
        print(f"data error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"data error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"data error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
