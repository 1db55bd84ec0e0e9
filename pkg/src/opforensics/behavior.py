"""User clustering from posting dynamics.

Heavy posters in a window get a daily activity series, its power
spectrum, and pairwise cosine similarities between spectra; pairs at or
above the threshold become edges of a weighted graph that is clustered
by maximum modularity.  Power spectra are non-negative, so cosine
similarity lands in [0, 1] and the default threshold 0.7 keeps pairs
whose spectral angle is at most about 45 degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Mapping, Sequence

import numpy as np

from .config import AnalysisConfig
from .errors import InsufficientDataError, ZeroSpectrumError
from .graph import Partition, WeightedGraph, max_modularity_partition
from .ingest import Corpus
from .timeseries import (
    DailySeries,
    PowerSpectrum,
    aggregate_daily,
    bin_hourly,
    power_spectrum,
)

__all__ = [
    "BehaviorReport",
    "heavy_users",
    "spectral_similarity",
    "behavior_graph",
    "cluster_behaviors",
]


@dataclass(frozen=True)
class BehaviorReport:
    """Everything behind a behavioural clustering, kept for audit."""

    window: tuple[datetime, datetime]
    user_post_counts: dict[str, int]  # heavy users only, window counts
    daily_series: dict[str, DailySeries]
    spectra: dict[str, PowerSpectrum]
    similarity_graph: WeightedGraph
    partition: Partition
    zero_variance_users: tuple[str, ...]
    parameters: dict

    def clusters(self) -> dict[int, list[str]]:
        return self.partition.communities()


def heavy_users(
    corpus: Corpus, window: tuple[datetime, datetime], min_posts: int
) -> list[str]:
    """Users posting strictly more than ``min_posts`` times in the window,
    ordered by descending count (ties by user key)."""
    start, end = window
    if start >= end:
        raise ValueError(f"inverted window: {start} >= {end}")
    counts: dict[str, int] = {}
    for record in corpus.records:
        if start <= record.timestamp < end:
            counts[record.user_key] = counts.get(record.user_key, 0) + 1
    qualified = [(user, n) for user, n in counts.items() if n > min_posts]
    qualified.sort(key=lambda item: (-item[1], item[0]))
    return [user for user, _ in qualified]


def spectral_similarity(pa: PowerSpectrum, pb: PowerSpectrum) -> float:
    """Cosine of the angle between two power spectra, in [0, 1]."""
    if pa.n != pb.n:
        raise ValueError(f"spectrum lengths differ: {pa.n} != {pb.n}")
    va, vb = pa.power, pb.power
    na, nb = float(np.linalg.norm(va)), float(np.linalg.norm(vb))
    if na == 0.0 or nb == 0.0:
        raise ZeroSpectrumError("similarity undefined against a zero spectrum")
    value = float(np.dot(va, vb)) / (na * nb)
    return min(1.0, max(0.0, value))


def behavior_graph(
    spectra: Mapping[str, PowerSpectrum], threshold: float
) -> WeightedGraph:
    """Similarity graph: edge (i, j) with weight s when s >= threshold.

    Users similar to nobody stay as isolated vertices and later cluster
    as singletons.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    users = sorted(spectra)
    if len(users) < 2:
        raise InsufficientDataError("need at least 2 spectra to compare")
    edges = []
    for i, u in enumerate(users):
        for v in users[i + 1 :]:
            s = spectral_similarity(spectra[u], spectra[v])
            if s >= threshold:
                edges.append((u, v, s))
    return WeightedGraph.from_edges(edges, vertices=users)


def cluster_behaviors(
    corpus: Corpus,
    cfg: AnalysisConfig | None = None,
    window: tuple[datetime, datetime] | None = None,
) -> BehaviorReport:
    """Full behavioural pipeline over a window (default: the US run-up).

    heavy users -> hourly bins -> daily sums -> power spectra ->
    similarity graph -> maximum-modularity clusters.  Heavy users whose
    daily series is constant have a zero spectrum; they are excluded
    from the graph and reported separately.
    """
    cfg = cfg or AnalysisConfig()
    window = window or cfg.windows["us2016"]
    users = heavy_users(corpus, window, cfg.heavy_behavior)
    if len(users) < 2:
        raise InsufficientDataError(
            f"need at least 2 heavy users in window, found {len(users)}"
        )

    daily: dict[str, DailySeries] = {}
    spectra: dict[str, PowerSpectrum] = {}
    zero_variance = []
    counts: dict[str, int] = {}
    for user in users:
        hourly = bin_hourly(corpus, user, window)
        series = aggregate_daily(hourly)
        daily[user] = series
        counts[user] = int(hourly.counts.sum())
        if np.ptp(series.counts) == 0:
            zero_variance.append(user)
            continue
        spectra[user] = power_spectrum(series.counts, dt=series.dt)

    if len(spectra) < 2:
        raise InsufficientDataError(
            "fewer than 2 heavy users with varying daily activity"
        )
    graph = behavior_graph(spectra, cfg.similarity_threshold)
    partition = max_modularity_partition(graph, cfg.seed)

    return BehaviorReport(
        window=window,
        user_post_counts=counts,
        daily_series=daily,
        spectra=spectra,
        similarity_graph=graph,
        partition=partition,
        zero_variance_users=tuple(zero_variance),
        parameters={
            "min_posts": cfg.heavy_behavior,
            "similarity_threshold": cfg.similarity_threshold,
            "seed": cfg.seed,
        },
    )
