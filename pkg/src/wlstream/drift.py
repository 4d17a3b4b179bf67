"""Familial variant-delay analysis and CDF/CCDF emission.

For each positive-class sample, the delays are the absolute day gaps to the
other members of its family. Samples with no variants take the default
delta_min = 0 and delta_max = D, D being the gap to the latest corpus entry.
"""

import bisect
from dataclasses import dataclass
from typing import List, Tuple

from .graphs import Corpus


class DriftAnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class DelayRecord:
    id: str
    family: str
    delta_min: int
    delta_max: int
    has_variants: bool


@dataclass(frozen=True)
class VariantDelays:
    per_sample: Tuple[DelayRecord, ...]

    def delta_mins(self) -> List[int]:
        return [r.delta_min for r in self.per_sample]

    def delta_maxs(self) -> List[int]:
        return [r.delta_max for r in self.per_sample]


def compute_delays(corpus: Corpus, latest_malware_only: bool = False) -> VariantDelays:
    """Per-malware min/max variant delays; benign samples are ignored.

    ``latest_malware_only`` restricts the reference day used for the
    no-variant default D to positive-class samples.
    """
    malware = [g for g in corpus.graphs if g.class_label == 1]
    missing = [g.id for g in malware if g.family is None]
    if missing:
        raise DriftAnalysisError(
            "malware samples missing a family tag: " + ", ".join(missing)
        )
    if latest_malware_only:
        latest = max((g.day for g in malware), default=0)
    else:
        latest = max((g.day for g in corpus.graphs), default=0)

    family_days = {}
    for g in malware:
        family_days.setdefault(g.family, []).append(g.day)
    for days in family_days.values():
        days.sort()

    records = []
    for g in malware:
        days = family_days[g.family]
        if len(days) < 2:
            records.append(DelayRecord(g.id, g.family, 0, latest - g.day, False))
            continue
        # Sorted family days: the nearest other member is adjacent to one
        # occurrence of g's own day, the farthest sits at an end of the list
        # (excluding that occurrence).
        d = g.day
        i = bisect.bisect_left(days, d)  # days[i] == d
        neighbors = []
        if i > 0:
            neighbors.append(d - days[i - 1])
        if i + 1 < len(days):
            neighbors.append(days[i + 1] - d)
        delta_min = min(neighbors)
        lo = days[0] if i > 0 else days[1]
        hi = days[-1] if i < len(days) - 1 else days[-2]
        delta_max = max(abs(d - lo), abs(d - hi))
        records.append(DelayRecord(g.id, g.family, delta_min, delta_max, True))
    return VariantDelays(per_sample=tuple(records))


def cdf(values: List[int]) -> List[Tuple[int, float]]:
    """Step function (value, fraction <= value) over sorted distinct values."""
    if not values:
        raise ValueError("cdf of empty input")
    n = len(values)
    counts = {}
    for v in sorted(values):
        counts[v] = counts.get(v, 0) + 1
    steps = []
    cum = 0
    for v in sorted(counts):
        cum += counts[v]
        steps.append((v, cum / n))
    return steps


def ccdf(values: List[int]) -> List[Tuple[int, float]]:
    """Complement of ``cdf``: (value, fraction > value) at the same steps."""
    return [(v, 1.0 - frac) for v, frac in cdf(values)]


def cdf_at(steps: List[Tuple[int, float]], value: int) -> float:
    """Evaluate a cdf/ccdf step list at ``value`` (0 / last-step beyond ends)."""
    result = 0.0 if steps[0][0] > value else steps[0][1]
    for v, frac in steps:
        if v <= value:
            result = frac
        else:
            break
    return result


def delays_to_csv(delays: VariantDelays) -> str:
    lines = ["id,family,delta_min,delta_max,has_variants"]
    for r in delays.per_sample:
        lines.append(
            f"{r.id},{r.family},{r.delta_min},{r.delta_max},{str(r.has_variants).lower()}"
        )
    return "\n".join(lines) + "\n"


def distribution_to_csv(steps: List[Tuple[int, float]]) -> str:
    lines = ["value,fraction"]
    for v, frac in steps:
        lines.append(f"{v},{frac:.6f}")
    return "\n".join(lines) + "\n"
