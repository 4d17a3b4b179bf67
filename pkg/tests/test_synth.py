import random
from collections import Counter
from dataclasses import replace

import pytest

from wlstream.graphs import corpus_to_bytes
from wlstream.synth import GenerationError, SynthConfig, generate, stationary_variant
from wlstream.wl import WlConfig, extract_vocab


SMALL = SynthConfig(seed=11, days=12, samples_per_day=10)


def test_class_split():
    c = generate(SynthConfig(seed=1, days=1, samples_per_day=10))
    labels = Counter(g.class_label for g in c.graphs)
    assert labels == {-1: 5, 1: 5}


def test_benign_fraction_rounding():
    c = generate(SynthConfig(seed=1, days=1, samples_per_day=9, benign_fraction=0.5))
    # int(0.5 * 9 + 0.5) = 5 benign per day
    assert sum(1 for g in c.graphs if g.class_label == -1) == 5


def test_deterministic_bytes():
    a = corpus_to_bytes(generate(SMALL))
    b = corpus_to_bytes(generate(SMALL))
    assert a == b


def test_seed_changes_output():
    a = corpus_to_bytes(generate(SMALL))
    b = corpus_to_bytes(generate(replace(SMALL, seed=12)))
    assert a != b


def test_ids_and_day_count():
    c = generate(SMALL)
    assert c.day_count == SMALL.days
    assert c.graphs[0].id == "d000s000"
    assert len(c.graphs) == SMALL.days * SMALL.samples_per_day
    per_day = Counter(g.day for g in c.graphs)
    assert all(per_day[d] == SMALL.samples_per_day for d in range(SMALL.days))


def distinct_labels(c):
    return {lbl for g in c.graphs for _, lbl in g.nodes}


def test_label_alphabet_growth_toggle():
    frozen = generate(replace(SMALL, new_labels_per_day=0, family_birth_rate=0.0))
    growing = generate(replace(SMALL, new_labels_per_day=5))
    base = replace(SMALL, new_labels_per_day=0, family_birth_rate=0.0)
    # With no new labels and no births, the alphabet is day-0 labels only.
    allowed = {f"L{i:03d}" for i in range(base.label_alphabet_base)} | {
        f"f{fid:03d}m{j}" for fid in range(base.family_count) for j in range(base.motif_size)
    }
    assert distinct_labels(frozen) <= allowed
    assert len(distinct_labels(growing)) > len(distinct_labels(frozen))


def test_malware_contains_family_motif_labels():
    c = generate(SMALL)
    fams = {}
    for g in c.graphs:
        if g.class_label != 1:
            continue
        motif = {lbl for _, lbl in g.nodes if lbl.startswith("f")}
        fams.setdefault(g.family, set()).update(motif)
        # All motif labels in one sample belong to a single family prefix.
        assert len({lbl[:4] for lbl in motif}) == 1
        assert len(motif) == SMALL.motif_size
    # Distinct families use distinct label sets.
    seen = list(fams.values())
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            assert not (seen[i] & seen[j])


def test_benign_never_contains_motif_labels():
    c = generate(SMALL)
    for g in c.graphs:
        if g.class_label == -1:
            assert not any(lbl.startswith("f") for _, lbl in g.nodes)
            assert g.family is None


def test_malware_families_tagged():
    c = generate(SMALL)
    assert all(g.family is not None for g in c.graphs if g.class_label == 1)


def test_drift_grows_wl_vocabulary():
    c = generate(SynthConfig(seed=3, days=20, samples_per_day=10))
    half = [g for g in c.graphs if g.day < 10]
    vocab = extract_vocab(half, WlConfig(1))
    n_half = len(vocab)
    extract_vocab([g for g in c.graphs if g.day >= 10], WlConfig(1), vocab)
    assert len(vocab) > n_half


def test_stationary_family_population_constant():
    c = stationary_variant(SynthConfig(seed=5, days=30, samples_per_day=20))
    fams_by_day = {}
    for g in c.graphs:
        if g.class_label == 1:
            fams_by_day.setdefault(g.day, set()).add(g.family)
    all_fams = set().union(*fams_by_day.values())
    assert len(all_fams) == 4  # default family_count, no births ever
    # Every family name is one of the initial ones.
    assert all_fams <= {f"fam{fid:03d}" for fid in range(4)}


def test_stationary_label_alphabet_constant():
    c = stationary_variant(SMALL)
    day0 = {lbl for g in c.graphs if g.day == 0 for _, lbl in g.nodes}
    assert distinct_labels(c) <= day0 | {
        f"f{fid:03d}m{j}" for fid in range(SMALL.family_count) for j in range(SMALL.motif_size)
    }
    assert c.name.endswith("-stationary")


def test_birth_rate_monotone_in_family_count():
    def n_families(rate):
        cfg = SynthConfig(seed=9, days=40, samples_per_day=10, family_birth_rate=rate)
        c = generate(cfg)
        return len({g.family for g in c.graphs if g.class_label == 1})

    counts = [n_families(r) for r in (0.0, 0.3, 0.6, 0.9)]
    assert counts == sorted(counts)
    assert counts[0] < counts[-1]


def test_bad_configs_rejected():
    with pytest.raises(GenerationError):
        SynthConfig(family_count=0)
    with pytest.raises(ValueError):
        SynthConfig(benign_fraction=1.5)
    with pytest.raises(ValueError):
        SynthConfig(days=0)
    with pytest.raises(ValueError):
        SynthConfig(noise_nodes_min=6, noise_nodes_max=2)
