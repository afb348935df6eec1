# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing nonnegative subspace pursuit for degree-bounded SVG nodes.

Each iteration scores the candidates ``k`` by the residual correlation
``K(x_i, x_k) - sum_j s_j K(x_j, x_k)``, merges the ``M`` best positively scored
candidates with the current support, solves the restricted nonnegative least squares
problem, and keeps the ``M`` largest weights. The loop stops when the support no
longer changes, when the residual grows (the previous iterate is returned), or after
``max_iterations`` rounds.

By default every candidate is scored each round. A ``search`` callback replaces the
scan: it receives the attention score of the round and returns the candidate positions
it visited, for example through a beam search over a partially built graph.
"""

from collections.abc import Callable
import logging

import numpy as np

from ..kernels import GramSource
from .nnls import NnlsSettings, SparseCoefficients, solve_svg_node

log = logging.getLogger(__name__)

DEFAULT_PURSUIT_ITERATIONS = 16

PositionScoreFn = Callable[[np.ndarray], np.ndarray]
CandidateSearch = Callable[[PositionScoreFn], np.ndarray]


def _log_weights(weights) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(weights, dtype=np.float64))


def attention_scores(source: GramSource, positions, weights, targets=None) -> np.ndarray:
    """Score candidates against the residual of the current iterate.

    Parameters
    ----------
    source : GramSource
        Log-kernel Gram system of the node.
    positions : array-like of int
        Candidate positions of the current support.
    weights : array-like of float
        Weights ``s_j`` aligned with ``positions``.
    targets : array-like of int, optional
        Candidate positions to score. Every candidate by default.

    Returns
    -------
    numpy.ndarray
        ``K(x_i, x_k) - sum_j s_j K(x_j, x_k)`` for every target position ``k``,
        scaled by ``exp(-shift)``. Products are formed as exponentials of summed logs.

    """
    positions = np.asarray(positions, dtype=np.int64)
    if targets is None:
        targets = np.arange(len(source.candidates))
    targets = np.asarray(targets, dtype=np.int64)
    scores = np.exp(np.asarray(source.anchor_column)[targets] - source.shift)
    if positions.size and targets.size:
        log_block = source.block(positions, targets)
        log_terms = _log_weights(weights)[:, None] + log_block - source.shift
        scores = scores - np.exp(log_terms).sum(axis=0)
    return scores


def residual_sq(source: GramSource, positions, weights) -> float:
    """Shifted ``||phi(x_i) - sum_j s_j phi(x_j)||**2`` for a support and its weights."""
    positions = np.asarray(positions, dtype=np.int64)
    value = np.exp(source.anchor_self - source.shift)
    if positions.size == 0:
        return float(value)
    log_w = _log_weights(weights)
    cross = np.exp(log_w + np.asarray(source.anchor_column)[positions] - source.shift).sum()
    log_block = source.block(positions, positions)
    quadratic = np.exp(log_w[:, None] + log_w[None, :] + log_block - source.shift).sum()
    return float(max(value - 2.0 * cross + quadratic, 0.0))


def _largest(keys: np.ndarray, ids: np.ndarray, count: int) -> np.ndarray:
    """Indices of the ``count`` largest keys, ties to the smallest id."""
    order = np.lexsort((ids, -keys))
    return order[:count]


def _scorer(source: GramSource, positions, weights) -> PositionScoreFn:
    def score(targets) -> np.ndarray:
        return attention_scores(source, positions, weights, targets)

    return score


def nonneg_subspace_pursuit(
    source: GramSource,
    max_degree: int,
    settings: NnlsSettings | None = None,
    max_iterations: int = DEFAULT_PURSUIT_ITERATIONS,
    search: CandidateSearch | None = None,
) -> SparseCoefficients:
    """Approximate ``min ||phi(x_i) - Phi s||**2`` subject to ``s >= 0`` and ``||s||_0 <= M``.

    Parameters
    ----------
    source : GramSource
        Log-kernel Gram system (dense or lazily evaluated) of the node.
    max_degree : int
        Support bound ``M``. Values above the candidate count are clipped to it.
    settings : NnlsSettings, optional
        Settings of the restricted nonnegative least squares solves.
    max_iterations : int, optional
        Round limit ``T``.
    search : callable, optional
        Called once per round with a function mapping candidate positions to their
        attention scores. Returns the positions to draw the ``M`` best from. All
        candidates are scored when omitted.

    Returns
    -------
    SparseCoefficients
        At most ``M`` positive weights. ``iterations`` holds the accepted rounds.

    Raises
    ------
    ValueError
        If ``max_degree`` or ``max_iterations`` is below one.
    NonConvergenceError
        Propagated from a restricted solve.

    """
    if max_degree < 1:
        raise ValueError(f"max_degree must be at least 1, got {max_degree}")
    if max_iterations < 1:
        raise ValueError(f"max_iterations must be at least 1, got {max_iterations}")
    candidates = np.asarray(source.candidates, dtype=np.int64)
    size = len(candidates)
    degree = min(int(max_degree), size)
    position_of = {int(c): p for p, c in enumerate(candidates)}

    positions = np.zeros(0, dtype=np.int64)
    weights = np.zeros(0)
    residual = residual_sq(source, positions, weights)
    accepted = 0
    for _ in range(max_iterations):
        if search is None:
            targets = np.arange(size)
        else:
            visited = search(_scorer(source, positions, weights))
            targets = np.unique(np.asarray(visited, dtype=np.int64))
        scores = attention_scores(source, positions, weights, targets)
        mask = scores > 0
        if not mask.any():
            break
        positive = targets[mask]
        chosen = positive[_largest(scores[mask], candidates[positive], degree)]
        union = np.union1d(positions, chosen)
        if union.size == positions.size:
            break

        restricted = solve_svg_node(source.subgram(union), settings)
        if restricted.support_size > degree:
            keep = np.sort(_largest(restricted.weights, restricted.indices, degree))
            new_ids, new_weights = restricted.indices[keep], restricted.weights[keep]
        else:
            new_ids, new_weights = restricted.indices, restricted.weights
        new_positions = np.array([position_of[int(j)] for j in new_ids], dtype=np.int64)
        new_residual = residual_sq(source, new_positions, new_weights)
        if new_residual > residual:
            log.debug(f"node {source.anchor}: residual grew to {new_residual:.3e}, stopping")
            break

        unchanged = np.array_equal(np.sort(new_positions), np.sort(positions))
        positions, weights, residual = new_positions, new_weights, new_residual
        accepted += 1
        if unchanged:
            break

    ids = candidates[positions]
    order = np.argsort(ids, kind="stable")
    coeffs = SparseCoefficients(
        anchor=int(source.anchor),
        indices=ids[order],
        weights=np.asarray(weights, dtype=np.float64)[order],
        residual_sq=residual,
        iterations=accepted,
    )
    log.debug(
        f"node {source.anchor}: pursuit support {coeffs.support_size}/{degree} "
        f"after {accepted} rounds"
    )
    return coeffs
