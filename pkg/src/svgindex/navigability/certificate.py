# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the quasi-monotonicity certificate of a support vector graph.

For every node ``i`` and every search target ``t`` the graph must offer an
out-neighbor ``j`` with ``K(x_i, x_t) <= (1 + eps_i) K(x_j, x_t)``. Both sides are
compared after dividing by ``sqrt(K(x_t, x_t))`` and by the largest normalized anchor
entry of node ``i``, which is the scale the solver certifies its optimality on.
"""

import logging

import numpy as np

from ..build.pool import distinct_candidates
from ..data import Dataset, ground_truth
from ..exceptions import GraphError
from ..graph import DirectedGraph
from ..kernels import KernelSpec, pairwise_similarity

log = logging.getLogger(__name__)

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-8


def search_targets(kernel: KernelSpec, data: Dataset, similarity_matrix=None) -> np.ndarray:
    """Distinct canonical top-1 answers over all indexed queries, ascending."""
    truths = ground_truth(kernel, data, similarity_matrix)
    return np.unique([truth.target for truth in truths])


def certify_quasi_monotone(
    g: DirectedGraph,
    data: Dataset,
    kernel: KernelSpec,
    eps_per_node,
    similarity_matrix: np.ndarray | None = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> list[tuple[int, int]]:
    """Return every ``(i, t)`` pair where no out-neighbor of ``i`` is close enough to ``t``.

    Parameters
    ----------
    g : DirectedGraph
        Graph under audit, usually a support vector graph.
    data : Dataset
        Indexed vectors.
    kernel : KernelSpec
        Kernel the graph was built with.
    eps_per_node : sequence of float
        Slack ``eps_i`` of every node.
    similarity_matrix : numpy.ndarray, optional
        Precomputed ``sim`` matrix of the dataset.
    rtol, atol : float, optional
        Tolerances of the comparison on the solver scale.

    Returns
    -------
    list of tuple
        Violating ``(i, t)`` pairs in ascending order. Targets holding the same vector as
        ``x_i`` are skipped. A node without out-neighbors violates every target.

    """
    if g.n != data.n:
        raise GraphError(f"graph has {g.n} nodes but the dataset {data.n} vectors")
    eps = np.asarray(eps_per_node, dtype=np.float64)
    if eps.shape != (data.n,):
        raise ValueError(f"expected {data.n} slack values, got shape {eps.shape}")
    if similarity_matrix is None:
        similarity_matrix = pairwise_similarity(kernel, data.values, data.values)
    log_k = similarity_matrix * kernel.inverse_width
    half_self = 0.5 * np.diag(log_k)
    targets = search_targets(kernel, data, similarity_matrix)

    violations = []
    for i in range(data.n):
        own = targets[
            (targets != i) & ~np.all(data.values[targets] == data.values[i], axis=1)
        ]
        if own.size == 0:
            continue
        neighbors = g.neighbors(i)
        if not neighbors:
            violations.extend((i, int(t)) for t in own)
            continue
        candidates = distinct_candidates(data, i)
        scale = np.max(log_k[i, candidates] - half_self[candidates])
        lhs = np.exp(log_k[i, own] - half_self[own] - scale)
        best = np.max(log_k[np.ix_(neighbors, own)], axis=0)
        rhs = (1.0 + eps[i]) * np.exp(best - half_self[own] - scale)
        failing = own[lhs - rhs > atol + rtol * rhs]
        violations.extend((i, int(t)) for t in failing)
    if violations:
        log.warning(f"Certificate failed for {len(violations)} (node, target) pairs")
    return violations
