# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing recall@1 evaluation of graph indices.

Every indexed vector serves as a query. A search succeeds when it terminates on one of
the brute-force maximizers of ``K(., query)``.
"""

from __future__ import annotations

from enum import Enum
import logging

import numpy as np
from pydantic import NonNegativeFloat, NonNegativeInt
from scipy.special import logsumexp

from ..common import ConfigModel
from ..data import Dataset, ground_truth
from ..exceptions import GraphError
from ..graph import DirectedGraph
from ..kernels import KernelSpec, pairwise_similarity
from ..search import SearchParams, search_indexed

log = logging.getLogger(__name__)


class EvalModeKind(str, Enum):
    """Entry point policy of a recall evaluation."""

    ALL_PAIRS = "all_pairs"
    FIXED_ENTRY = "fixed_entry"
    RANDOM_ENTRY = "random_entry"


class EvalMode(ConfigModel):
    """Entry point policy.

    ``all_pairs`` runs one search per (entry, query) pair with distinct ends,
    ``fixed_entry`` enters every search at the kernel medoid, and ``random_entry``
    draws one entry per query from ``seed``.
    """

    kind: EvalModeKind = EvalModeKind.ALL_PAIRS
    seed: int = 0

    @classmethod
    def all_pairs(cls) -> EvalMode:
        """Every entry for every query."""
        return cls(kind=EvalModeKind.ALL_PAIRS)

    @classmethod
    def fixed_entry(cls) -> EvalMode:
        """The kernel medoid for every query."""
        return cls(kind=EvalModeKind.FIXED_ENTRY)

    @classmethod
    def random_entry(cls, seed: int = 0) -> EvalMode:
        """A seeded random entry per query."""
        return cls(kind=EvalModeKind.RANDOM_ENTRY, seed=seed)

    def label(self) -> str:
        """Short label used in CSV output."""
        if self.kind == EvalModeKind.RANDOM_ENTRY:
            return f"random_entry,{self.seed}"
        return self.kind.value


class RecallResult(ConfigModel):
    """Recall@1 and search cost of one evaluation."""

    mode: str
    queue_length: NonNegativeInt
    searches: NonNegativeInt
    successes: NonNegativeInt
    recall: NonNegativeFloat
    mean_kernel_evals: NonNegativeFloat


def kernel_medoid(
    data: Dataset, kernel: KernelSpec, similarity_matrix: np.ndarray | None = None
) -> int:
    """Node maximizing ``sum_j K(x_i, x_j)``, smallest id on ties."""
    if similarity_matrix is None:
        similarity_matrix = pairwise_similarity(kernel, data.values, data.values)
    totals = logsumexp(similarity_matrix * kernel.inverse_width, axis=1)
    return int(np.argmax(totals))


def _entries_and_queries(data: Dataset, kernel: KernelSpec, mode: EvalMode, similarity_matrix):
    n = data.n
    if mode.kind == EvalModeKind.ALL_PAIRS:
        return [(entry, k) for entry in range(n) for k in range(n) if entry != k]
    if mode.kind == EvalModeKind.FIXED_ENTRY:
        medoid = kernel_medoid(data, kernel, similarity_matrix)
        return [(medoid, k) for k in range(n)]
    entries = np.random.default_rng(mode.seed).integers(0, n, size=n)
    return [(int(entry), k) for k, entry in enumerate(entries)]


def evaluate_recall(
    g: DirectedGraph,
    data: Dataset,
    kernel: KernelSpec,
    params: SearchParams | None = None,
    mode: EvalMode | None = None,
    similarity_matrix: np.ndarray | None = None,
) -> RecallResult:
    """Run every search of ``mode`` and report recall@1 with the mean kernel evaluations.

    Parameters
    ----------
    g : DirectedGraph
        Frozen graph index over ``data``.
    data : Dataset
        Indexed vectors, each used as a query.
    kernel : KernelSpec
        Kernel defining the ground truth and the search order.
    params : SearchParams, optional
        Queue length. The entry of ``params`` is ignored; ``mode`` chooses entries.
    mode : EvalMode, optional
        Entry point policy. Defaults to ``all_pairs``.
    similarity_matrix : numpy.ndarray, optional
        Precomputed ``sim`` matrix of the dataset.

    """
    params = params or SearchParams()
    mode = mode or EvalMode.all_pairs()
    if not g.frozen:
        raise GraphError("recall evaluation needs a frozen graph", reason="not-frozen")
    if g.n != data.n:
        raise GraphError(f"graph has {g.n} nodes but the dataset {data.n} vectors")
    if similarity_matrix is None:
        similarity_matrix = pairwise_similarity(kernel, data.values, data.values)
    truths = ground_truth(kernel, data, similarity_matrix)
    pairs = _entries_and_queries(data, kernel, mode, similarity_matrix)
    successes, evals = 0, 0
    for entry, k in pairs:
        result = search_indexed(g, similarity_matrix, k, entry, params.queue_length)
        successes += result.terminal in truths[k]
        evals += result.kernel_evals
    recall = successes / len(pairs)
    log.debug(f"recall@1 {recall:.4f} over {len(pairs)} searches ({mode.label()})")
    return RecallResult(
        mode=mode.label(),
        queue_length=params.queue_length,
        searches=len(pairs),
        successes=successes,
        recall=recall,
        mean_kernel_evals=evals / len(pairs),
    )


def recall_at_1(
    g: DirectedGraph,
    data: Dataset,
    kernel: KernelSpec,
    params: SearchParams | None = None,
    mode: EvalMode | None = None,
    similarity_matrix: np.ndarray | None = None,
) -> float:
    """Fraction of searches ending on a true top-1 answer. See :func:`evaluate_recall`."""
    return evaluate_recall(g, data, kernel, params, mode, similarity_matrix).recall
