"""Deterministic generator of drifting, family-structured graph corpora.

Malware graphs embed the labeled motif of a currently-alive family plus noise
nodes; benign graphs are noise only. Families are born and retired over time
and carry their own node labels, so population drift shows up both as new
classes of positives and as feature-space growth. Fresh noise labels enter
the alphabet daily for the same reason.

All randomness comes from two ``random.Random`` (MT19937) streams seeded as
``seed`` and ``seed ^ _BIRTH_STREAM_SALT``; the draw order below is part of
the output contract. Family births live on the dedicated stream so raising
``family_birth_rate`` can only add birth days, never move them.
"""

import random
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from .graphs import Corpus, LabeledGraph

_BIRTH_STREAM_SALT = 0x9E3779B97F4A7C15


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 7
    days: int = 60
    samples_per_day: int = 50
    family_count: int = 4
    motif_size: int = 5
    noise_nodes_min: int = 5
    noise_nodes_max: int = 15
    label_alphabet_base: int = 30
    new_labels_per_day: int = 2
    family_birth_rate: float = 0.6
    family_lifetime_min: int = 20
    family_lifetime_max: int = 50
    newborn_burst: int = 4
    benign_fraction: float = 0.5
    name: str = "synth"

    def __post_init__(self):
        if self.days < 1 or self.samples_per_day < 1:
            raise ValueError("days and samples_per_day must be positive")
        if self.family_count < 1:
            raise GenerationError("family_count must be >= 1: no family is ever alive")
        if self.motif_size < 1 or self.label_alphabet_base < 1:
            raise ValueError("motif_size and label_alphabet_base must be positive")
        if not (0 <= self.noise_nodes_min <= self.noise_nodes_max):
            raise ValueError("need 0 <= noise_nodes_min <= noise_nodes_max")
        if self.new_labels_per_day < 0:
            raise ValueError("new_labels_per_day must be >= 0")
        if not 0.0 <= self.family_birth_rate <= 1.0:
            raise ValueError("family_birth_rate must be in [0,1]")
        if not (1 <= self.family_lifetime_min <= self.family_lifetime_max):
            raise ValueError("need 1 <= family_lifetime_min <= family_lifetime_max")
        if self.newborn_burst < 1:
            raise ValueError("newborn_burst must be >= 1")
        if not 0.0 < self.benign_fraction < 1.0:
            raise ValueError("benign_fraction must be in (0,1)")


class _Family:
    def __init__(self, name: str, labels: List[str], edges: List[Tuple[int, int]], expires: Optional[int]):
        self.name = name
        self.labels = labels
        self.edges = edges
        self.expires = expires  # None = immortal

    def alive(self, day: int) -> bool:
        return self.expires is None or day < self.expires


def _make_family(
    rng: random.Random, fid: int, birth_day: int, config: SynthConfig, immortal: bool
) -> _Family:
    labels = [f"f{fid:03d}m{j}" for j in range(config.motif_size)]
    edges = [(j, j + 1) for j in range(config.motif_size - 1)]
    for i in range(config.motif_size):
        for j in range(config.motif_size):
            if i != j and j != i + 1 and rng.random() < 0.2:
                edges.append((i, j))
    if immortal:
        expires = None
    else:
        expires = birth_day + rng.randint(config.family_lifetime_min, config.family_lifetime_max)
    return _Family(f"fam{fid:03d}", labels, edges, expires)


def _noise_part(rng, count, pool, offset):
    """``count`` noise nodes (ids from ``offset``) and edges among them."""
    nodes = [(offset + i, rng.choice(pool)) for i in range(count)]
    edges = []
    for _ in range(count):
        s = rng.randrange(count)
        t = rng.randrange(count)
        if s != t:
            edges.append((offset + s, offset + t))
    return nodes, edges


def _benign_graph(rng, gid, day, pool, config) -> LabeledGraph:
    count = config.motif_size + rng.randint(config.noise_nodes_min, config.noise_nodes_max)
    nodes, edges = _noise_part(rng, count, pool, 0)
    return LabeledGraph(
        id=gid, day=day, class_label=-1, nodes=tuple(nodes), edges=tuple(edges)
    )


def _malware_graph(rng, gid, day, family, pool, config) -> LabeledGraph:
    m = config.motif_size
    nodes = [(j, family.labels[j]) for j in range(m)]
    edges = list(family.edges)
    count = rng.randint(config.noise_nodes_min, config.noise_nodes_max)
    noise_nodes, noise_edges = _noise_part(rng, count, pool, m)
    nodes.extend(noise_nodes)
    edges.extend(noise_edges)
    # Links point into the motif only, so motif out-neighborhoods (and hence
    # its enriched labels) stay identical across samples of a family.
    for i in range(count):
        if rng.random() < 0.3:
            edges.append((m + i, rng.randrange(m)))
    return LabeledGraph(
        id=gid,
        day=day,
        class_label=1,
        family=family.name,
        nodes=tuple(nodes),
        edges=tuple(edges),
    )


def _generate(config: SynthConfig, stationary: bool) -> Corpus:
    rng = random.Random(config.seed)
    birth_rng = random.Random(config.seed ^ _BIRTH_STREAM_SALT)

    pool = [f"L{i:03d}" for i in range(config.label_alphabet_base)]
    families = [
        _make_family(rng, fid, 0, config, immortal=stationary)
        for fid in range(config.family_count)
    ]
    next_fid = config.family_count

    # Per-day benign count; the remainder of each day is malware.
    benign_per_day = int(config.benign_fraction * config.samples_per_day + 0.5)
    malware_per_day = config.samples_per_day - benign_per_day
    if malware_per_day < 1 or benign_per_day < 1:
        raise ValueError("benign_fraction leaves a class empty at this samples_per_day")

    graphs = []
    for day in range(config.days):
        newborn = None
        if day > 0 and not stationary:
            families = [f for f in families if f.alive(day)]
            for k in range(config.new_labels_per_day):
                pool.append(f"d{day:03d}n{k}")
        # Draw the birth coin every day so the stream stays aligned across
        # configurations that only differ in the rate.
        u = birth_rng.random()
        if day > 0 and not stationary and u < config.family_birth_rate:
            newborn = _make_family(rng, next_fid, day, config, immortal=False)
            next_fid += 1
            families.append(newborn)
        if not families:
            raise GenerationError(f"no family alive on day {day}")

        for s in range(config.samples_per_day):
            gid = f"d{day:03d}s{s:03d}"
            if s < benign_per_day:
                graphs.append(_benign_graph(rng, gid, day, pool, config))
                continue
            mi = s - benign_per_day
            if day == 0:
                # Round-robin so every initial family is observed on day 0.
                family = families[mi % len(families)]
            elif newborn is not None and mi < config.newborn_burst:
                # A fresh family releases a burst of same-day variants, so it
                # is always observed on its birth day.
                family = newborn
            else:
                family = rng.choice(families)
            graphs.append(_malware_graph(rng, gid, day, family, pool, config))

    return Corpus(graphs=tuple(graphs), name=config.name, day_count=config.days)


def generate(config: SynthConfig) -> Corpus:
    """Drifting corpus: families churn, the label alphabet grows."""
    return _generate(config, stationary=False)


def stationary_variant(config: SynthConfig) -> Corpus:
    """Control corpus: day-0 families live forever, no births, no new labels.

    The day-conditional sample distribution is identical across days.
    """
    return _generate(replace(config, name=config.name + "-stationary"), stationary=True)
