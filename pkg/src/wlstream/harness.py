"""Day-batched stream evaluation: prequential online runs and the four
window-trained baselines (once / daily / multi-once / multi-daily).

Every evaluated sample is scored before its true label is consumed; an
optional prediction hook fires between the two, which is what the
prequential-integrity tests latch onto.
"""

import io
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import wl
from .batch import BatchModel, TrainConfig, predict_batch, train_batch
from .graphs import Corpus, LabeledGraph, sort_by_day
from .online import OnlineModel, ZeroVectorSample
from .wl import Vocabulary, WlConfig

ONLINE_VARIABLE = "online-variable"
ONLINE_FIXED = "online-fixed"
BATCH_ONCE = "once"
BATCH_DAILY = "daily"
BATCH_MULTI_ONCE = "multi-once"
BATCH_MULTI_DAILY = "multi-daily"

ONLINE_KINDS = (ONLINE_VARIABLE, ONLINE_FIXED)
BATCH_KINDS = (BATCH_ONCE, BATCH_DAILY, BATCH_MULTI_ONCE, BATCH_MULTI_DAILY)

PredictionHook = Callable[[str, int], None]

CSV_HEADER = "day,regimen,samples,mistakes,cumulative_error_rate,vocab_size"


@dataclass(frozen=True)
class RegimenSpec:
    kind: str
    window_days: int = 10
    fixed_vocab_day: int = 0

    def __post_init__(self):
        if self.kind not in ONLINE_KINDS + BATCH_KINDS:
            raise ValueError(f"unknown regimen kind {self.kind!r}")
        if self.window_days < 1:
            raise ValueError("window_days must be >= 1")
        if self.fixed_vocab_day < 0:
            raise ValueError("fixed_vocab_day must be >= 0")


@dataclass(frozen=True)
class DayRow:
    day: int
    samples: int
    mistakes: int
    cumulative_error_rate: float
    vocab_size: int


@dataclass
class StreamReport:
    regimen: str
    rows: List[DayRow]
    skipped_days: List[int] = field(default_factory=list)

    @property
    def total_samples(self) -> int:
        return sum(r.samples for r in self.rows)

    @property
    def total_mistakes(self) -> int:
        return sum(r.mistakes for r in self.rows)

    @property
    def final_error_rate(self) -> float:
        return self.rows[-1].cumulative_error_rate if self.rows else 0.0

    @property
    def accuracy(self) -> float:
        return 1.0 - self.final_error_rate

    def days(self) -> List[int]:
        return [r.day for r in self.rows]


class _Accumulator:
    """Per-day tallies plus running cumulative error."""

    def __init__(self, regimen: str):
        self.regimen = regimen
        self.rows: List[DayRow] = []
        self.skipped: List[int] = []
        self._samples = 0
        self._mistakes = 0

    def close_day(self, day: int, samples: int, mistakes: int, vocab_size: int):
        self._samples += samples
        self._mistakes += mistakes
        rate = self._mistakes / self._samples if self._samples else 0.0
        self.rows.append(DayRow(day, samples, mistakes, rate, vocab_size))

    def report(self) -> StreamReport:
        return StreamReport(self.regimen, self.rows, self.skipped)


def _by_day(corpus: Corpus) -> Dict[int, List[LabeledGraph]]:
    grouped: Dict[int, List[LabeledGraph]] = {}
    for g in sort_by_day(corpus).graphs:
        grouped.setdefault(g.day, []).append(g)
    return grouped


def run_online(
    corpus: Corpus,
    wl_config: WlConfig,
    algorithm: str,
    regimen: RegimenSpec,
    learning_rate: float = 1.0,
    prediction_hook: Optional[PredictionHook] = None,
) -> StreamReport:
    """Prequential pass: every sample is scored, then used for training.

    Variable regimen grows the vocabulary (and the model) with each sample
    before scoring it; fixed regimen freezes the vocabulary to the features
    of days <= ``fixed_vocab_day`` and drops everything newer.
    """
    if regimen.kind not in ONLINE_KINDS:
        raise ValueError(f"run_online needs an online regimen, got {regimen.kind!r}")
    if not corpus.graphs:
        raise ValueError("empty corpus")

    grouped = _by_day(corpus)
    fixed = regimen.kind == ONLINE_FIXED
    vocab = Vocabulary()
    if fixed:
        prefix = [g for d in sorted(grouped) if d <= regimen.fixed_vocab_day for g in grouped[d]]
        wl.extract_vocab(prefix, wl_config, vocab)
    # Cumulative distinct features observed in the stream, reported per day.
    # For the variable regimen this is the model vocabulary itself.
    observed = vocab.copy() if fixed else vocab

    model = OnlineModel(algorithm=algorithm, learning_rate=learning_rate)
    model.grow(len(vocab))
    acc = _Accumulator(regimen.kind)

    for day in range(corpus.day_count):
        mistakes = 0
        samples = grouped.get(day, ())
        for g in samples:
            features = wl.relabel(g, wl_config)
            if fixed:
                for f in features:
                    observed.add(f)
            else:
                for f in features:
                    vocab.add(f)
                model.grow(len(vocab))
            x = wl.vectorize_features(features, vocab)
            _, predicted = model.predict(x)
            if prediction_hook is not None:
                prediction_hook(g.id, predicted)
            truth = g.class_label
            if predicted != truth:
                mistakes += 1
            try:
                model.update(x, truth)
            except ZeroVectorSample:
                pass  # degenerate sample: counted above, no update possible
        acc.close_day(day, len(samples), mistakes, len(observed))
    return acc.report()


def batch_training_plan(
    corpus: Corpus, regimen: RegimenSpec
) -> List[Tuple[int, Tuple[str, ...], Tuple[str, ...]]]:
    """(eval_day, training graph ids, evaluated graph ids) per evaluated day.

    Training ids are empty when no usable window exists (the day is skipped).
    Once/multi-once reuse one window; daily trains on the most recent
    non-empty prior day; multi-daily slides a ``window_days``-wide window.
    """
    if regimen.kind not in BATCH_KINDS:
        raise ValueError(f"not a batch regimen: {regimen.kind!r}")
    grouped = _by_day(corpus)
    w = regimen.window_days

    def ids(days: Sequence[int]) -> Tuple[str, ...]:
        return tuple(g.id for d in days for g in grouped.get(d, ()))

    plan = []
    if regimen.kind == BATCH_ONCE:
        window = ids([0])
        first_eval = 1
    elif regimen.kind == BATCH_MULTI_ONCE:
        window = ids(range(w))
        first_eval = w
    else:
        window = None
        first_eval = 1 if regimen.kind == BATCH_DAILY else w

    for day in range(first_eval, corpus.day_count):
        eval_ids = tuple(g.id for g in grouped.get(day, ()))
        if regimen.kind == BATCH_DAILY:
            prior = [d for d in range(day) if grouped.get(d)]
            train_ids = ids([prior[-1]]) if prior else ()
        elif regimen.kind == BATCH_MULTI_DAILY:
            train_ids = ids(range(day - w, day))
        else:
            train_ids = window
        plan.append((day, train_ids, eval_ids))
    return plan


def run_batch_regimen(
    corpus: Corpus,
    wl_config: WlConfig,
    regimen: RegimenSpec,
    train_config: TrainConfig = TrainConfig(),
    prediction_hook: Optional[PredictionHook] = None,
) -> StreamReport:
    """Sliding/one-shot window training with strictly forward evaluation.

    Each model's vocabulary comes from its own training window only; days
    with no trainable window are skipped and flagged on the report.
    """
    if not corpus.graphs:
        raise ValueError("empty corpus")
    graph_index = {g.id: g for g in corpus.graphs}
    grouped = _by_day(corpus)
    plan = batch_training_plan(corpus, regimen)

    observed = Vocabulary()
    observed_day = -1

    def observe_through(day: int):
        nonlocal observed_day
        while observed_day < day:
            observed_day += 1
            for g in grouped.get(observed_day, ()):
                wl.extract_vocab([g], wl_config, observed)

    models: Dict[Tuple[str, ...], Tuple[Vocabulary, BatchModel]] = {}
    acc = _Accumulator(regimen.kind)
    # Day 0 (and any other training-only prefix) is observed but never
    # evaluated, so its labels are free for training.
    for day, train_ids, eval_ids in plan:
        observe_through(day)
        if not train_ids:
            acc.skipped.append(day)
            acc.close_day(day, 0, 0, len(observed))
            continue
        if train_ids not in models:
            window = [graph_index[i] for i in train_ids]
            vocab = wl.extract_vocab(window, wl_config)
            samples = [
                (wl.vectorize(g, wl_config, vocab), g.class_label) for g in window
            ]
            models[train_ids] = (vocab, train_batch(samples, len(vocab), train_config))
        vocab, model = models[train_ids]
        mistakes = 0
        for gid in eval_ids:
            g = graph_index[gid]
            x = wl.vectorize(g, wl_config, vocab)
            _, predicted = predict_batch(model, x)
            if prediction_hook is not None:
                prediction_hook(g.id, predicted)
            if predicted != g.class_label:
                mistakes += 1
        acc.close_day(day, len(eval_ids), mistakes, len(observed))
    return acc.report()


def report_to_csv(report: StreamReport) -> str:
    lines = [CSV_HEADER]
    for r in report.rows:
        lines.append(
            f"{r.day},{report.regimen},{r.samples},{r.mistakes},"
            f"{r.cumulative_error_rate:.6f},{r.vocab_size}"
        )
    return "\n".join(lines) + "\n"


def parse_report_csv(text: str) -> StreamReport:
    buf = io.StringIO(text)
    header = buf.readline().rstrip("\n")
    if header != CSV_HEADER:
        raise ValueError(f"unexpected report header: {header!r}")
    rows = []
    regimen = None
    for line in buf:
        line = line.rstrip("\n")
        if not line:
            continue
        day, regimen, samples, mistakes, rate, vocab_size = line.split(",")
        rows.append(DayRow(int(day), int(samples), int(mistakes), float(rate), int(vocab_size)))
    if regimen is None:
        raise ValueError("report has no rows")
    return StreamReport(regimen, rows)


@dataclass
class Comparison:
    days: List[int]
    names: List[str]
    error_rates: Dict[str, List[float]]
    ranking: List[Tuple[str, float]]  # (name, final accuracy), best first


def compare(reports: Sequence[Tuple[str, StreamReport]]) -> Comparison:
    """Align per-day cumulative error columns; requires identical day ranges."""
    if not reports:
        raise ValueError("no reports to compare")
    days = reports[0][1].days()
    for name, rep in reports[1:]:
        if rep.days() != days:
            raise ValueError(
                f"report {name!r} covers days {rep.days()[:1]}..{rep.days()[-1:]} "
                f"but {reports[0][0]!r} covers {days[:1]}..{days[-1:]}"
            )
    rates = {name: [r.cumulative_error_rate for r in rep.rows] for name, rep in reports}
    ranking = sorted(
        ((name, rep.accuracy) for name, rep in reports),
        key=lambda kv: (-kv[1], kv[0]),
    )
    return Comparison(
        days=days,
        names=[name for name, _ in reports],
        error_rates=rates,
        ranking=ranking,
    )


def comparison_to_csv(cmp: Comparison) -> str:
    lines = ["day,regimen,cumulative_error_rate"]
    for name in cmp.names:
        for day, rate in zip(cmp.days, cmp.error_rates[name]):
            lines.append(f"{day},{name},{rate:.6f}")
    return "\n".join(lines) + "\n"
