"""Shared builders and independent oracles used across the suite."""

import random

import pytest

from wlstream.graphs import Corpus, LabeledGraph
from wlstream.wl import SEP_ITEM, SEP_LEVEL


def graph(gid, nodes, edges=(), day=0, label=1, family=None):
    """Shorthand builder: nodes as [(id, "lbl"), ...] or ["lbl", ...]."""
    if nodes and not isinstance(nodes[0], tuple):
        nodes = [(i, lbl) for i, lbl in enumerate(nodes)]
    return LabeledGraph(
        id=gid,
        day=day,
        class_label=label,
        nodes=tuple(nodes),
        edges=tuple(edges),
        family=family,
    )


def random_graph(rng, gid="g", max_nodes=8, max_edges=16, alphabet=5, day=0, label=1):
    n = rng.randint(1, max_nodes)
    nodes = [(i, f"a{rng.randrange(alphabet)}") for i in range(n)]
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        s, t = rng.randrange(n), rng.randrange(n)
        edges.append((s, t))
    return graph(gid, nodes, edges, day=day, label=label)


def naive_expansion(g, node, degree):
    """Reference enrichment: materializes each node's depth-``degree``
    out-neighborhood independently, no shared state with the implementation."""
    if degree == 0:
        return g.labels()[node]
    prev = naive_expansion(g, node, degree - 1)
    neigh = sorted(naive_expansion(g, m, degree - 1) for m in g.out_neighbors()[node])
    return prev + SEP_LEVEL + SEP_ITEM.join(neigh)


def naive_relabel(g, h):
    return [naive_expansion(g, n, i) for n, _ in g.nodes for i in range(h + 1)]


def brute_force_delays(corpus, latest_malware_only=False):
    """O(n^2) oracle for min/max variant delays."""
    malware = [g for g in corpus.graphs if g.class_label == 1]
    if latest_malware_only:
        latest = max(g.day for g in malware)
    else:
        latest = max(g.day for g in corpus.graphs)
    out = {}
    for g in malware:
        deltas = [
            abs(g.day - o.day) for o in malware if o.id != g.id and o.family == g.family
        ]
        if deltas:
            out[g.id] = (min(deltas), max(deltas), True)
        else:
            out[g.id] = (0, latest - g.day, False)
    return out


def family_corpus(rng, n_malware=50, n_families=8, day_span=500, benign=5):
    """Random family-tagged corpus for delay-analysis tests."""
    graphs = []
    for i in range(n_malware):
        graphs.append(
            graph(
                f"m{i:03d}",
                ["x"],
                day=rng.randrange(day_span),
                label=1,
                family=f"fam{rng.randrange(n_families)}",
            )
        )
    for i in range(benign):
        graphs.append(graph(f"b{i:03d}", ["x"], day=rng.randrange(day_span), label=-1))
    day_count = max(g.day for g in graphs) + 1
    return Corpus(graphs=tuple(graphs), name="fam-test", day_count=day_count)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
