# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the linear programming oracle of Delaunay neighborhood.

Nodes ``i`` and ``j`` are Delaunay neighbors when their Voronoi cells share a facet
with nonempty relative interior. The oracle looks for a point ``x`` on the bisector of
``x_i`` and ``x_j`` that is closer to both by a margin ``t`` than to every other
vector:

    maximize t
    subject to 2 (x_j - x_i)^T x = ||x_j||^2 - ||x_i||^2
               2 (x_k - x_i)^T x + t <= ||x_k||^2 - ||x_i||^2   for k not in {i, j}
               t <= 1

The pair are neighbors iff ``t* > tolerance``; ``|t*| <= tolerance`` marks a degenerate
(co-spherical) configuration. Coordinates are centered and scaled to unit maximum
magnitude first, which leaves the neighborhood relation unchanged.
"""

from __future__ import annotations

import logging

import numpy as np
from pydantic import NonNegativeInt
from scipy.optimize import linprog

from ..common import ConfigModel, map_in_order
from ..data import Dataset
from ..exceptions import LinearProgramError
from ..graph import DirectedGraph

log = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9


class DelaunayNeighbors(ConfigModel):
    """Delaunay neighbors of one node and the pairs the oracle found degenerate."""

    node: NonNegativeInt
    neighbors: list[int]
    degenerate: list[int]


class DelaunaySubsetResult(ConfigModel):
    """Outcome of checking that every graph edge is a Delaunay edge."""

    checked: NonNegativeInt
    exceptions: list[tuple[int, int]]
    degenerate: list[tuple[int, int]]

    @property
    def holds(self) -> bool:
        """Whether every non-degenerate edge is a Delaunay edge."""
        return not self.exceptions


def _normalized(values: np.ndarray) -> np.ndarray:
    centered = values - values.mean(axis=0)
    scale = np.abs(centered).max()
    return centered / scale if scale > 0 else centered


class _PairProgram:
    """Shared data of the pair programs over one dataset."""

    def __init__(self, data: Dataset):
        self.points = _normalized(data.values)
        self.norms = np.einsum("ij,ij->i", self.points, self.points)
        self.n, self.d = self.points.shape

    def solve(self, i: int, j: int) -> tuple[float, int]:
        points, norms = self.points, self.norms
        others = np.setdiff1d(np.arange(self.n), [i, j])
        a_ub = np.hstack([2.0 * (points[others] - points[i]), np.ones((others.size, 1))])
        b_ub = norms[others] - norms[i]
        a_eq = np.append(2.0 * (points[j] - points[i]), 0.0)[None, :]
        b_eq = [norms[j] - norms[i]]
        cost = np.zeros(self.d + 1)
        cost[-1] = -1.0
        result = linprog(
            cost,
            A_ub=a_ub if others.size else None,
            b_ub=b_ub if others.size else None,
            A_eq=a_eq,
            b_eq=b_eq,
            bounds=[(None, None)] * self.d + [(None, 1.0)],
            method="highs",
        )
        if result.status != 0:
            raise LinearProgramError(
                f"pair ({i}, {j}): linear program failed with status {result.status}: "
                f"{result.message}",
                reason="lp-failure",
                pair=(i, j),
            )
        return float(-result.fun), int(result.status)


def delaunay_pair_lp(data: Dataset, i: int, j: int) -> tuple[float, int]:
    """Solve the program of pair ``(i, j)`` and return the optimal margin and the status.

    Raises
    ------
    LinearProgramError
        If the solver does not reach an optimum.

    """
    if i == j:
        raise ValueError(f"pair ({i}, {j}) is not a pair of distinct nodes")
    return _PairProgram(data).solve(i, j)


def delaunay_neighbors_lp(
    data: Dataset, i: int, tolerance: float = DEFAULT_TOLERANCE
) -> DelaunayNeighbors:
    """Find the Delaunay neighbors of node ``i``."""
    program = _PairProgram(data)
    neighbors, degenerate = [], []
    for j in range(data.n):
        if j == i:
            continue
        margin, _ = program.solve(i, j)
        if margin > tolerance:
            neighbors.append(j)
        elif abs(margin) <= tolerance:
            degenerate.append(j)
    return DelaunayNeighbors(node=i, neighbors=neighbors, degenerate=degenerate)


def delaunay_graph(data: Dataset, tolerance: float = DEFAULT_TOLERANCE, jobs: int = 1):
    """Build the symmetric Delaunay graph of ``data``.

    Each unordered pair is solved once.

    Returns
    -------
    tuple
        The frozen graph and the list of degenerate ``(i, j)`` pairs with ``i < j``.

    """
    program = _PairProgram(data)
    pairs = [(i, j) for i in range(data.n) for j in range(i + 1, data.n)]
    margins = map_in_order(lambda pair: program.solve(*pair)[0], pairs, jobs)
    g = DirectedGraph(data.n)
    degenerate = []
    for (i, j), margin in zip(pairs, margins, strict=True):
        if margin > tolerance:
            g.add_edge(i, j)
            g.add_edge(j, i)
        elif abs(margin) <= tolerance:
            degenerate.append((i, j))
    log.debug(f"Delaunay graph over {data.n} vectors: {g.num_edges // 2} edges")
    return g.freeze(), degenerate


def check_delaunay_subset(
    g: DirectedGraph, data: Dataset, tolerance: float = DEFAULT_TOLERANCE
) -> DelaunaySubsetResult:
    """Check every edge of ``g`` against the oracle.

    Degenerate pairs are reported separately and never count as exceptions.
    """
    program = _PairProgram(data)
    exceptions, degenerate = [], []
    edges = sorted(g.edge_set())
    for i, j in edges:
        margin, _ = program.solve(i, j)
        if abs(margin) <= tolerance:
            degenerate.append((i, j))
        elif margin < 0:
            exceptions.append((i, j))
    if exceptions:
        log.warning(f"{len(exceptions)} of {len(edges)} edges are not Delaunay edges")
    return DelaunaySubsetResult(checked=len(edges), exceptions=exceptions, degenerate=degenerate)
