"""Iterative neighborhood-label enrichment and bag-of-features vectorization.

A node's degree-i label is its degree-(i-1) label concatenated with the
lexicographically sorted degree-(i-1) labels of its out-neighbors. Raw counts
of these enriched labels over a shared vocabulary give the explicit feature
map of the subtree kernel.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, IO, Iterable, List, Optional

from .graphs import LabeledGraph

# Injective encoding: previous label SEP_LEVEL joined-neighbor-labels, with
# neighbor labels joined by SEP_ITEM. Both are rejected in input node labels.
SEP_LEVEL = "\x1f"
SEP_ITEM = "\x1e"

SparseVector = Dict[int, float]


@dataclass(frozen=True)
class WlConfig:
    """h = degree of neighborhood folded into each node label."""

    h: int = 2

    def __post_init__(self):
        if self.h < 0:
            raise ValueError(f"h must be >= 0, got {self.h}")


class Vocabulary:
    """Append-only bijection feature string <-> dense index.

    Indices are assigned in first-encountered order and never change, so a
    model's weight positions stay valid as the vocabulary grows.
    """

    def __init__(self):
        self._index = {}
        self._strings = []

    def __len__(self):
        return len(self._strings)

    def __contains__(self, feature):
        return feature in self._index

    def __getitem__(self, feature):
        return self._index[feature]

    def get(self, feature, default=None):
        return self._index.get(feature, default)

    def string_at(self, index):
        return self._strings[index]

    def add(self, feature: str) -> int:
        """Return the index of ``feature``, appending it if new."""
        idx = self._index.get(feature)
        if idx is None:
            idx = len(self._strings)
            self._index[feature] = idx
            self._strings.append(feature)
        return idx

    def items(self):
        return ((f, i) for i, f in enumerate(self._strings))

    def copy(self):
        v = Vocabulary()
        v._index = dict(self._index)
        v._strings = list(self._strings)
        return v


def relabel(graph: LabeledGraph, config: WlConfig) -> List[str]:
    """All enriched labels of ``graph`` up to degree h.

    Returns |N|*(h+1) strings ordered node-major (per node: degree 0..h).
    """
    labels = graph.labels()
    adj = graph.out_neighbors()
    node_order = [nid for nid, _ in graph.nodes]
    per_node = {n: [labels[n]] for n in node_order}
    current = {n: labels[n] for n in node_order}
    for _ in range(config.h):
        nxt = {}
        for n in node_order:
            neigh = sorted(current[m] for m in adj[n])
            nxt[n] = current[n] + SEP_LEVEL + SEP_ITEM.join(neigh)
        current = nxt
        for n in node_order:
            per_node[n].append(current[n])
    out = []
    for n in node_order:
        out.extend(per_node[n])
    return out


def extract_vocab(
    graphs: Iterable[LabeledGraph],
    config: WlConfig,
    vocab: Optional[Vocabulary] = None,
) -> Vocabulary:
    """Extend ``vocab`` (in place) with every enriched label of ``graphs``.

    Existing indices are preserved; new features get the next indices in
    first-encountered order. A fresh vocabulary is built when none is given.
    """
    if vocab is None:
        vocab = Vocabulary()
    for g in graphs:
        for feature in relabel(g, config):
            vocab.add(feature)
    return vocab


def vectorize_features(features: Iterable[str], vocab: Vocabulary) -> SparseVector:
    """Count features against ``vocab``; features not in it are dropped."""
    counts = Counter()
    for feature in features:
        idx = vocab.get(feature)
        if idx is not None:
            counts[idx] += 1
    return dict(counts)


def vectorize(graph: LabeledGraph, config: WlConfig, vocab: Vocabulary) -> SparseVector:
    """Bag-of-features count vector of ``graph`` over ``vocab``."""
    return vectorize_features(relabel(graph, config), vocab)


def dot(x: SparseVector, y: SparseVector) -> float:
    if len(y) < len(x):
        x, y = y, x
    return float(sum(v * y.get(i, 0.0) for i, v in x.items()))


def wl_kernel(g1: LabeledGraph, g2: LabeledGraph, config: WlConfig) -> float:
    """Subtree-kernel value: dot product of the two explicit feature maps."""
    vocab = extract_vocab([g1, g2], config)
    return dot(vectorize(g1, config, vocab), vectorize(g2, config, vocab))


def _escape(feature: str) -> str:
    return (
        feature.replace("\\", "\\\\")
        .replace(SEP_LEVEL, "\\x1f")
        .replace(SEP_ITEM, "\\x1e")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
    )


def _unescape(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            if nxt == "\\":
                out.append("\\")
                i += 2
                continue
            if nxt == "t":
                out.append("\t")
                i += 2
                continue
            if nxt == "n":
                out.append("\n")
                i += 2
                continue
            if text[i + 1 : i + 4] in ("x1f", "x1e"):
                out.append("\x1f" if text[i + 3] == "f" else "\x1e")
                i += 4
                continue
        out.append(c)
        i += 1
    return "".join(out)


def dump_vocab(vocab: Vocabulary, sink: IO) -> None:
    """Write one ``<index>\\t<feature>`` line per entry, separators escaped."""
    for feature, idx in vocab.items():
        sink.write(f"{idx}\t{_escape(feature)}\n")


def load_vocab(source: IO) -> Vocabulary:
    vocab = Vocabulary()
    for line_no, line in enumerate(source, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        idx_str, _, feature = line.partition("\t")
        idx = vocab.add(_unescape(feature))
        if idx != int(idx_str):
            raise ValueError(f"line {line_no}: index {idx_str} out of order")
    return vocab
