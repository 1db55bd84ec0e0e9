"""User clustering from linguistic features.

The pipeline, in fixed order: build the term-user count matrix, drop
dynamic stopwords (terms used by more than a fraction ``p`` of users),
select per-user keywords by a Gamma quantile cut on word counts, rebuild
the count matrix over the keyword union, form the co-occurrence
adjacency, thin it to each user's top-k edges, and cluster the weighted
graph by maximum modularity.  Dynamic-stopword removal must precede
keyword selection; swapping the two changes the keyword set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .config import AnalysisConfig
from .errors import DegenerateFitError, EmptyGraphError, InsufficientDataError
from .gammafit import fit_gamma_moments
from .graph import (
    Partition,
    WeightedGraph,
    degree_centrality,
    max_modularity_partition,
)
from .textproc import UserDocument

__all__ = [
    "TermUserMatrix",
    "CommunityReport",
    "dynamic_stopwords",
    "select_keywords",
    "cooccurrence_adjacency",
    "topk_thin",
    "cluster_users_by_language",
]

_CHUNK = 512


@dataclass(frozen=True)
class TermUserMatrix:
    """Sparse term-by-user counts; the binary view is "count > 0"."""

    users: tuple[str, ...]
    rows: dict[str, dict[str, int]]  # term -> {user: count > 0}

    @property
    def n_terms(self) -> int:
        return len(self.rows)

    @property
    def n_users(self) -> int:
        return len(self.users)

    def terms(self) -> list[str]:
        return sorted(self.rows)

    @classmethod
    def from_documents(cls, documents: Sequence[UserDocument]) -> "TermUserMatrix":
        users = tuple(sorted(doc.user_key for doc in documents))
        if len(set(users)) != len(users):
            raise ValueError("duplicate user keys in documents")
        rows: dict[str, dict[str, int]] = {}
        for doc in documents:
            for term, count in doc.stem_counts.items():
                if count > 0:
                    rows.setdefault(term, {})[doc.user_key] = count
        return cls(users, rows)

    def drop_terms(self, terms: Iterable[str]) -> "TermUserMatrix":
        dropped = set(terms)
        rows = {t: dict(r) for t, r in self.rows.items() if t not in dropped}
        return TermUserMatrix(self.users, rows)

    def restrict_terms(self, terms: Iterable[str]) -> "TermUserMatrix":
        keep = set(terms)
        rows = {t: dict(r) for t, r in self.rows.items() if t in keep}
        return TermUserMatrix(self.users, rows)

    def user_counts(self, user: str) -> dict[str, int]:
        return {t: r[user] for t, r in self.rows.items() if user in r}

    def to_dense(self, terms: Sequence[str]) -> np.ndarray:
        """Dense (terms x users) count block in the given term order."""
        user_pos = {u: j for j, u in enumerate(self.users)}
        block = np.zeros((len(terms), len(self.users)))
        for i, term in enumerate(terms):
            for user, count in self.rows.get(term, {}).items():
                block[i, user_pos[user]] = count
        return block


@dataclass(frozen=True)
class CommunityReport:
    """Clustering result with the data behind the per-community views."""

    users: tuple[str, ...]
    partition: Partition
    keyword_rankings: dict[int, list[tuple[str, int]]]
    central_users: dict[int, list[str]]
    dynamic_stopword_count: int
    keyword_count: int
    parameters: dict

    def communities(self) -> dict[int, list[str]]:
        return self.partition.communities()


def dynamic_stopwords(matrix: TermUserMatrix, p: float) -> set[str]:
    """Terms used by strictly more than ``p * n_users`` distinct users."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be in (0, 1), got {p}")
    if matrix.n_terms == 0 or matrix.n_users == 0:
        raise InsufficientDataError("empty term-user matrix")
    cutoff = p * matrix.n_users
    return {term for term, row in matrix.rows.items() if len(row) > cutoff}


def select_keywords(doc: UserDocument, q: float) -> set[str]:
    """Words whose count reaches the q-quantile of the moment-fitted Gamma.

    A degenerate fit (uniform counts or a single word) keeps every word.
    """
    if not doc.stem_counts:
        raise InsufficientDataError(f"document for {doc.user_key!r} is empty")
    counts = doc.stem_counts
    try:
        fit = fit_gamma_moments(list(counts.values()))
    except DegenerateFitError:
        return set(counts)
    cutoff = fit.quantile(q)
    return {word for word, count in counts.items() if count >= cutoff}


def cooccurrence_adjacency(matrix: TermUserMatrix) -> np.ndarray:
    """Symmetric user-user weights: shared terms weighted by count products.

    Entry (i, j) is the inner product of users i and j over the term
    rows; the diagonal is zeroed.
    """
    if matrix.n_terms == 0:
        raise InsufficientDataError("no terms to correlate users on")
    n = matrix.n_users
    adjacency = np.zeros((n, n))
    terms = matrix.terms()
    for lo in range(0, len(terms), _CHUNK):
        block = matrix.to_dense(terms[lo : lo + _CHUNK])
        adjacency += block.T @ block
    np.fill_diagonal(adjacency, 0.0)
    return adjacency


def _row_bounds(adjacency: np.ndarray, k: int) -> np.ndarray:
    """Per-row bound: k-th largest positive entry, or the smallest
    positive entry when the row has fewer than k, or +inf when empty."""
    n = adjacency.shape[0]
    bounds = np.full(n, np.inf)
    for i in range(n):
        positive = adjacency[i][adjacency[i] > 0]
        if positive.size == 0:
            continue
        ordered = np.sort(positive)[::-1]
        bounds[i] = ordered[k - 1] if positive.size >= k else ordered[-1]
    return bounds


def topk_thin(adjacency: np.ndarray, k: int) -> np.ndarray:
    """Zero every edge below both endpoints' k-th-largest row value.

    A surviving edge is top-k for at least one endpoint, so vertices may
    keep more than k edges.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if adjacency.shape[0] != adjacency.shape[1]:
        raise ValueError("adjacency must be square")
    if not np.allclose(adjacency, adjacency.T):
        raise ValueError("adjacency must be symmetric")
    bounds = _row_bounds(adjacency, k)
    floor = np.minimum(bounds[:, None], bounds[None, :])
    thinned = np.where((adjacency > 0) & (adjacency >= floor), adjacency, 0.0)
    return thinned


def _graph_from_matrix(adjacency: np.ndarray, users: Sequence[str]) -> WeightedGraph:
    edges = []
    n = len(users)
    for i in range(n):
        for j in range(i + 1, n):
            if adjacency[i, j] > 0:
                edges.append((users[i], users[j], float(adjacency[i, j])))
    return WeightedGraph.from_edges(edges, vertices=users)


def cluster_users_by_language(
    documents: Sequence[UserDocument], cfg: AnalysisConfig | None = None
) -> CommunityReport:
    """Run the full linguistic-feature clustering over user documents."""
    cfg = cfg or AnalysisConfig()
    documents = sorted(documents, key=lambda d: d.user_key)
    if len(documents) < 2:
        raise InsufficientDataError("need at least 2 user documents")

    matrix = TermUserMatrix.from_documents(documents)
    dynamic = dynamic_stopwords(matrix, cfg.p)
    pruned = matrix.drop_terms(dynamic)

    user_keywords: dict[str, set[str]] = {}
    for doc in documents:
        counts = {
            t: c for t, c in doc.stem_counts.items() if t not in dynamic and c > 0
        }
        if not counts:
            continue
        user_keywords[doc.user_key] = select_keywords(
            UserDocument(doc.user_key, counts, sum(counts.values())), cfg.q
        )
    if not user_keywords:
        raise InsufficientDataError(
            "every user was emptied by dynamic-stopword removal"
        )
    keywords = set().union(*user_keywords.values())
    if not keywords:
        raise EmptyGraphError("keyword selection kept no terms")

    restricted = pruned.restrict_terms(keywords)
    adjacency = cooccurrence_adjacency(restricted)
    thinned = topk_thin(adjacency, cfg.k)
    graph = _graph_from_matrix(thinned, restricted.users)
    if graph.total_weight <= 0:
        raise EmptyGraphError("no co-occurrence edges survive thinning")
    partition = max_modularity_partition(graph, cfg.seed)

    rankings: dict[int, list[tuple[str, int]]] = {}
    central: dict[int, list[str]] = {}
    for community, members in partition.communities().items():
        # a community's report covers the keywords its own members
        # selected, not terms members merely use
        allowed = set().union(
            *(user_keywords.get(user, set()) for user in members)
        )
        totals: dict[str, int] = {}
        for user in members:
            for term, count in restricted.user_counts(user).items():
                if term in allowed:
                    totals[term] = totals.get(term, 0) + count
        rankings[community] = sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))
        sub = graph.subgraph(members)
        central[community] = degree_centrality(sub, min(10, len(members)))

    return CommunityReport(
        users=restricted.users,
        partition=partition,
        keyword_rankings=rankings,
        central_users=central,
        dynamic_stopword_count=len(dynamic),
        keyword_count=len(keywords),
        parameters={"p": cfg.p, "q": cfg.q, "k": cfg.k, "seed": cfg.seed},
    )
