# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing greedy and beam search over graph indices.

Kernel searches compare similarities, which order candidates exactly like the kernel
and its logarithm at any width.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field, replace
import heapq
import logging

import numpy as np
from pydantic import NonNegativeInt, PositiveInt
from scipy.spatial.distance import cdist

from .common import ConfigModel
from .data import Dataset, TopOne
from .exceptions import DimensionMismatchError, GraphError
from .graph import DirectedGraph
from .kernels import KernelSpec, pairwise_similarity

log = logging.getLogger(__name__)

ScoreFn = Callable[[np.ndarray], np.ndarray]
NeighborFn = Callable[[int], Sequence[int]]


class SearchParams(ConfigModel):
    """Search settings.

    Parameters
    ----------
    queue_length : int
        Result set length ``L``. ``1`` is plain greedy search.
    entry : int
        Entry node.

    """

    queue_length: PositiveInt = 1
    entry: NonNegativeInt = 0


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one search.

    ``path`` runs from the entry to ``terminal`` along graph edges. ``visited`` lists
    every scored node in scoring order. ``success`` is filled by :meth:`judged`.
    """

    terminal: int
    path: list[int]
    kernel_evals: int
    visited: list[int] = field(default_factory=list, repr=False)
    success: bool | None = None

    def judged(self, truth: TopOne) -> SearchResult:
        """Return the result with ``success`` set against the ground truth."""
        return replace(self, success=self.terminal in truth)


def _greedy(neighbors: NeighborFn, score: ScoreFn, entry: int) -> SearchResult:
    current = entry
    best = score(np.array([entry]))[0]
    evals = 1
    path = [entry]
    visited = {entry: None}
    while True:
        candidates = np.asarray(neighbors(current), dtype=np.int64)
        if candidates.size == 0:
            break
        scores = score(candidates)
        evals += candidates.size
        visited.update(dict.fromkeys(candidates.tolist()))
        k = int(np.argmax(scores))
        if not scores[k] > best:
            break
        current, best = int(candidates[k]), scores[k]
        path.append(current)
    return SearchResult(current, path, evals, list(visited))


def best_first(
    neighbors: NeighborFn, score: ScoreFn, entry: int, queue_length: int
) -> SearchResult:
    """Best-first search keeping the ``queue_length`` best scored nodes.

    The search stops once the best unexpanded candidate scores below the worst kept
    node. With ``queue_length == 1`` it visits the same chain as greedy search.
    """
    entry_score = score(np.array([entry]))[0]
    evals = 1
    scores = {entry: entry_score}
    parent = {entry: None}
    candidates = [(-entry_score, entry)]
    # worst kept node on top: lowest score, largest id
    kept = [(entry_score, -entry)]
    while candidates:
        negative, current = heapq.heappop(candidates)
        if len(kept) >= queue_length and -negative < kept[0][0]:
            break
        fresh = [v for v in neighbors(current) if v not in scores]
        if not fresh:
            continue
        fresh_scores = score(np.asarray(fresh, dtype=np.int64))
        evals += len(fresh)
        for v, s in zip(fresh, fresh_scores, strict=True):
            v = int(v)
            scores[v] = s
            if len(kept) < queue_length or s > kept[0][0]:
                parent[v] = current
                heapq.heappush(candidates, (-s, v))
                heapq.heappush(kept, (s, -v))
                if len(kept) > queue_length:
                    heapq.heappop(kept)
    _, negative_id = max(kept)
    terminal = -negative_id
    path = [terminal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return SearchResult(terminal, path[::-1], evals, list(scores))


def _run(neighbors: NeighborFn, score: ScoreFn, entry: int, queue_length: int) -> SearchResult:
    if queue_length == 1:
        return _greedy(neighbors, score, entry)
    return best_first(neighbors, score, entry, queue_length)


def _check_graph(g: DirectedGraph, data: Dataset, entry: int):
    if not g.frozen:
        raise GraphError("search needs a frozen graph", reason="not-frozen")
    if g.n != data.n:
        raise GraphError(f"graph has {g.n} nodes but the dataset {data.n} vectors")
    if not 0 <= entry < g.n:
        raise GraphError(f"entry {entry} out of range [0, {g.n})", reason="range")


def _query_vector(data: Dataset, query) -> np.ndarray:
    query = np.asarray(query, dtype=np.float64).ravel()
    if query.size != data.d:
        raise DimensionMismatchError(
            f"query dimension {query.size} != data dimension {data.d}",
            reason="dimension-mismatch",
        )
    return query


def kernel_score(kernel: KernelSpec, data: Dataset, query) -> ScoreFn:
    """Score node ids by their similarity to ``query``."""
    query = _query_vector(data, query)
    return lambda ids: pairwise_similarity(kernel, data.values[ids], query)[:, 0]


def matrix_score(similarity_matrix: np.ndarray, k: int) -> ScoreFn:
    """Score node ids by a precomputed similarity column ``k``."""
    column = similarity_matrix[:, k]
    return lambda ids: column[ids]


def greedy_search_euclidean(g: DirectedGraph, data: Dataset, query, entry: int) -> SearchResult:
    """Walk to the out-neighbor closest to ``query`` while it strictly improves.

    Ties go to the smallest id. A node without out-neighbors ends the walk.
    """
    _check_graph(g, data, entry)
    query = _query_vector(data, query)[None, :]

    def score(ids):
        return -cdist(data.values[ids], query, "sqeuclidean")[:, 0]

    return _greedy(g.neighbors, score, entry)


def greedy_search_kernel(
    g: DirectedGraph, data: Dataset, kernel: KernelSpec, query, entry: int
) -> SearchResult:
    """Walk to the out-neighbor maximizing ``K(., query)`` while it strictly improves."""
    _check_graph(g, data, entry)
    return _greedy(g.neighbors, kernel_score(kernel, data, query), entry)


def beam_search_kernel(
    g: DirectedGraph, data: Dataset, kernel: KernelSpec, query, entry: int, queue_length: int
) -> SearchResult:
    """Search with a result set of ``queue_length`` nodes, allowing bounded backtracking.

    Parameters
    ----------
    g : DirectedGraph
        Frozen graph index over ``data``.
    data : Dataset
        Indexed vectors.
    kernel : KernelSpec
        Kernel ranking the nodes.
    query : array-like
        Query vector.
    entry : int
        Entry node.
    queue_length : int
        Result set length ``L``.

    Returns
    -------
    SearchResult
        Best scored node, smallest id on ties, and its parent chain from the entry.

    """
    if queue_length < 1:
        raise ValueError(f"queue length must be at least 1, got {queue_length}")
    _check_graph(g, data, entry)
    return best_first(g.neighbors, kernel_score(kernel, data, query), entry, queue_length)


def search(
    g: DirectedGraph,
    data: Dataset,
    kernel: KernelSpec,
    query,
    params: SearchParams | None = None,
) -> SearchResult:
    """Run greedy kernel search for ``L == 1`` and beam search otherwise."""
    params = params or SearchParams()
    if params.queue_length == 1:
        return greedy_search_kernel(g, data, kernel, query, params.entry)
    return beam_search_kernel(g, data, kernel, query, params.entry, params.queue_length)


def search_indexed(
    g: DirectedGraph,
    similarity_matrix: np.ndarray,
    k: int,
    entry: int,
    queue_length: int = 1,
) -> SearchResult:
    """Search for indexed vector ``k`` using a precomputed similarity matrix."""
    return _run(g.neighbors, matrix_score(similarity_matrix, k), entry, queue_length)
