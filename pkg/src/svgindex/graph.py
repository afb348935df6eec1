# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the directed graph container and its text format."""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Iterable, Sequence
import logging
from pathlib import Path

from pydantic import NonNegativeFloat, NonNegativeInt

from .common import ConfigModel
from .exceptions import GraphError

log = logging.getLogger(__name__)


class DegreeStats(ConfigModel):
    """Out-degree statistics of a graph."""

    nodes: NonNegativeInt
    edges: NonNegativeInt
    min: NonNegativeInt
    max: NonNegativeInt
    mean: NonNegativeFloat


class DirectedGraph:
    """Directed graph over dense node ids ``0 .. n-1``.

    Out-neighbor lists are kept sorted and free of duplicates. When the graph is
    weighted, each edge carries a positive weight (the SVG coefficient ``s_j``).
    After :meth:`freeze` every mutation raises :class:`GraphError`.

    Parameters
    ----------
    n : int
        Number of nodes.
    weighted : bool, optional
        Whether edges carry weights.

    """

    def __init__(self, n: int, weighted: bool = False):
        """Initialize the DirectedGraph object."""
        if n < 0:
            raise ValueError(f"node count must be nonnegative, got {n}")
        self._n = n
        self._adjacency: list[list[int]] = [[] for _ in range(n)]
        self._weights: list[list[float]] | None = [[] for _ in range(n)] if weighted else None
        self._frozen = False

    @classmethod
    def complete(cls, n: int) -> DirectedGraph:
        """Create the frozen complete digraph on ``n`` nodes."""
        g = cls(n)
        for i in range(n):
            g._adjacency[i] = [j for j in range(n) if j != i]
        return g.freeze()

    @classmethod
    def from_adjacency(
        cls,
        adjacency: Sequence[Iterable[int]],
        weights: Sequence[Iterable[float]] | None = None,
    ) -> DirectedGraph:
        """Create a graph from per-node neighbor lists."""
        g = cls(len(adjacency), weighted=weights is not None)
        for i, neighbors in enumerate(adjacency):
            g.set_neighbors(i, list(neighbors), None if weights is None else list(weights[i]))
        return g

    @classmethod
    def from_coefficients(cls, n: int, coefficients: Iterable) -> DirectedGraph:
        """Create the frozen weighted graph linking each anchor to its support.

        ``coefficients`` yields objects with ``anchor``, ``indices`` and ``weights``
        attributes, such as :class:`svgindex.solvers.SparseCoefficients`.
        """
        g = cls(n, weighted=True)
        for coeffs in coefficients:
            g.set_neighbors(
                int(coeffs.anchor),
                [int(j) for j in coeffs.indices],
                [float(w) for w in coeffs.weights],
            )
        return g.freeze()

    @property
    def n(self) -> int:
        """Number of nodes."""
        return self._n

    def __len__(self) -> int:
        """Return the number of nodes."""
        return self._n

    @property
    def has_weights(self) -> bool:
        """Whether edges carry weights."""
        return self._weights is not None

    @property
    def frozen(self) -> bool:
        """Whether the graph rejects mutation."""
        return self._frozen

    def freeze(self) -> DirectedGraph:
        """Reject all further mutation and return the graph itself."""
        self._frozen = True
        return self

    def _check_node(self, i: int):
        if not 0 <= i < self._n:
            raise GraphError(f"node id {i} out of range [0, {self._n})", reason="range")

    def _check_mutable(self):
        if self._frozen:
            raise GraphError("graph is frozen", reason="frozen")

    def add_edge(self, i: int, j: int, weight: float | None = None):
        """Add edge ``i -> j``. Adding an existing edge leaves the graph unchanged."""
        self._check_mutable()
        self._check_node(i)
        self._check_node(j)
        if i == j:
            raise GraphError(f"self-loop on node {i}", reason="self-loop")
        if self._weights is not None:
            if weight is None or not weight > 0:
                raise GraphError(f"edge {i}->{j} needs a positive weight, got {weight}")
        elif weight is not None:
            raise GraphError("graph is not weighted", reason="weights")
        neighbors = self._adjacency[i]
        position = bisect_left(neighbors, j)
        if position < len(neighbors) and neighbors[position] == j:
            return
        neighbors.insert(position, j)
        if self._weights is not None:
            self._weights[i].insert(position, float(weight))

    def set_neighbors(
        self, i: int, neighbors: Sequence[int], weights: Sequence[float] | None = None
    ):
        """Replace the out-neighbors of node ``i``."""
        self._check_mutable()
        self._check_node(i)
        if (weights is None) != (self._weights is None):
            raise GraphError(
                f"node {i}: weights must be given exactly when the graph is weighted",
                reason="weights",
            )
        if weights is not None and len(weights) != len(neighbors):
            raise GraphError(f"node {i}: {len(neighbors)} neighbors but {len(weights)} weights")
        self._adjacency[i] = []
        if self._weights is not None:
            self._weights[i] = []
        for position, j in enumerate(neighbors):
            self.add_edge(i, int(j), None if weights is None else float(weights[position]))

    def neighbors(self, i: int) -> list[int]:
        """Sorted out-neighbors of node ``i``."""
        self._check_node(i)
        return list(self._adjacency[i])

    def weights(self, i: int) -> list[float] | None:
        """Edge weights of node ``i`` aligned with :meth:`neighbors`, or ``None``."""
        self._check_node(i)
        return None if self._weights is None else list(self._weights[i])

    def degree(self, i: int) -> int:
        """Out-degree of node ``i``."""
        self._check_node(i)
        return len(self._adjacency[i])

    @property
    def num_edges(self) -> int:
        """Number of directed edges."""
        return sum(len(neighbors) for neighbors in self._adjacency)

    def edge_set(self) -> set[tuple[int, int]]:
        """All edges as ``(i, j)`` pairs."""
        return {(i, j) for i, neighbors in enumerate(self._adjacency) for j in neighbors}

    def degree_stats(self) -> DegreeStats:
        """Exact minimum, maximum, and mean out-degree."""
        degrees = [len(neighbors) for neighbors in self._adjacency]
        if not degrees:
            return DegreeStats(nodes=0, edges=0, min=0, max=0, mean=0.0)
        return DegreeStats(
            nodes=self._n,
            edges=sum(degrees),
            min=min(degrees),
            max=max(degrees),
            mean=sum(degrees) / self._n,
        )

    def relabel(self, permutation: Sequence[int]) -> DirectedGraph:
        """Return the graph under new ids, where old node ``permutation[k]`` becomes ``k``."""
        if sorted(permutation) != list(range(self._n)):
            raise ValueError("not a permutation of the node ids")
        new_id = {int(old): new for new, old in enumerate(permutation)}
        g = DirectedGraph(self._n, weighted=self.has_weights)
        for new, old in enumerate(permutation):
            neighbors = [new_id[j] for j in self._adjacency[old]]
            if self._weights is None:
                g.set_neighbors(new, neighbors)
            else:
                g.set_neighbors(new, neighbors, self._weights[old])
        return g.freeze() if self._frozen else g

    def __eq__(self, other) -> bool:
        """Compare adjacency and weights."""
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (
            self._n == other._n
            and self._adjacency == other._adjacency
            and self._weights == other._weights
        )

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        """Printable representation of the graph."""
        return f"DirectedGraph(n={self._n}, edges={self.num_edges}, weighted={self.has_weights})"


def save_graph(g: DirectedGraph, path: str | Path) -> Path:
    """Write ``g`` in the text adjacency format.

    The first line holds ``n``; then one line per node, ``"i: j1,w1 j2,w2 ..."`` with
    weights written with :func:`repr` so they reload exactly, or ``"i: j1 j2 ..."``
    when the graph is unweighted.
    """
    path = Path(path)
    lines = [str(g.n)]
    for i in range(g.n):
        neighbors = g.neighbors(i)
        weights = g.weights(i)
        if weights is None:
            tokens = [str(j) for j in neighbors]
        else:
            tokens = [f"{j},{w!r}" for j, w in zip(neighbors, weights, strict=True)]
        lines.append(f"{i}: {' '.join(tokens)}".rstrip())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    log.debug(f"Wrote graph with {g.n} nodes and {g.num_edges} edges to {path}")
    return path


def _parse_node_line(path, line_number: int, line: str, n: int):
    head, sep, rest = line.partition(":")
    if not sep:
        raise GraphError(f"{path}:{line_number}: missing ':' in {line!r}", reason="malformed")
    try:
        i = int(head)
        neighbors, weights = [], []
        for token in rest.split():
            j, comma, w = token.partition(",")
            neighbors.append(int(j))
            weights.append(float(w) if comma else None)
    except ValueError as e:
        raise GraphError(
            f"{path}:{line_number}: malformed line {line!r}", reason="malformed"
        ) from e
    for node in (i, *neighbors):
        if not 0 <= node < n:
            raise GraphError(
                f"{path}:{line_number}: node id {node} out of range for {n} nodes", reason="range"
            )
    return i, neighbors, weights


def load_graph(path: str | Path) -> DirectedGraph:
    """Read a graph written by :func:`save_graph`. The result is frozen."""
    path = Path(path)
    text = path.read_text(encoding="utf-8").splitlines()
    # (line number, stripped text) of the non-blank lines
    lines = [(k, line.strip()) for k, line in enumerate(text, start=1) if line.strip()]
    if not lines:
        raise GraphError(f"{path}: file is empty", reason="malformed")
    first, header = lines[0]
    try:
        n = int(header)
    except ValueError as e:
        raise GraphError(f"{path}:{first}: expected the node count, got {header!r}") from e
    if n < 0:
        raise GraphError(f"{path}:{first}: negative node count {n}", reason="malformed")
    parsed = [_parse_node_line(path, k, line, n) for k, line in lines[1:]]
    all_weights = [w for _, _, weights in parsed for w in weights]
    weighted = bool(all_weights) and all(w is not None for w in all_weights)
    if all_weights and not weighted and any(w is not None for w in all_weights):
        raise GraphError(f"{path}: mixes weighted and unweighted edges", reason="malformed")
    g = DirectedGraph(n, weighted=weighted)
    seen = set()
    for (k, _), (i, neighbors, weights) in zip(lines[1:], parsed, strict=True):
        if i in seen:
            raise GraphError(f"{path}:{k}: node {i} listed twice", reason="malformed")
        seen.add(i)
        g.set_neighbors(i, neighbors, weights if weighted else None)
    return g.freeze()
