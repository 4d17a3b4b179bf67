"""Online classification of streams of node-labeled directed graphs.

Subtree-pattern count features over a growing vocabulary feed a margin-based
online linear classifier; window-trained batch baselines, a prequential
stream harness, variant-delay drift analysis and a deterministic synthetic
corpus generator round out the toolkit.
"""

__version__ = "0.1.0"

from .batch import BatchModel, TrainConfig, predict_batch, train_batch
from .drift import VariantDelays, ccdf, cdf, compute_delays
from .graphs import (
    Corpus,
    CorpusFormatError,
    LabeledGraph,
    load_corpus,
    parse_corpus,
    save_corpus,
    sort_by_day,
    write_corpus,
)
from .harness import RegimenSpec, StreamReport, compare, run_batch_regimen, run_online
from .online import OnlineModel, ZeroVectorSample
from .synth import GenerationError, SynthConfig, generate, stationary_variant
from .wl import (
    Vocabulary,
    WlConfig,
    extract_vocab,
    relabel,
    vectorize,
    wl_kernel,
)

__all__ = [
    "BatchModel",
    "Corpus",
    "CorpusFormatError",
    "GenerationError",
    "LabeledGraph",
    "OnlineModel",
    "RegimenSpec",
    "StreamReport",
    "SynthConfig",
    "TrainConfig",
    "VariantDelays",
    "Vocabulary",
    "WlConfig",
    "ZeroVectorSample",
    "ccdf",
    "cdf",
    "compare",
    "compute_delays",
    "extract_vocab",
    "generate",
    "load_corpus",
    "parse_corpus",
    "predict_batch",
    "relabel",
    "run_batch_regimen",
    "run_online",
    "save_corpus",
    "sort_by_day",
    "stationary_variant",
    "train_batch",
    "vectorize",
    "wl_kernel",
    "write_corpus",
]
