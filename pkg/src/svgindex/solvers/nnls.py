# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the active-set nonnegative least squares solver of one SVG node.

Node ``i`` solves ``min 1/2 s^T K s - k^T s`` subject to ``s >= 0``, where ``K`` is
the candidate Gram matrix and ``k`` the anchor column. The solver works on the
equilibrated system ``K~ = D^-1 K D^-1``, ``k~ = D^-1 k / c`` with ``D`` the square
root of the Gram diagonal and ``c`` the largest entry of ``D^-1 k``. Both scalings are
formed in log domain. The change of variables ``u = D s / c`` maps minimizers onto
minimizers and removes any dependence on the global exponent shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
import warnings

import numpy as np
from pydantic import PositiveFloat, PositiveInt
from scipy import linalg

from ..common import ConfigModel
from ..exceptions import NonConvergenceError
from ..kernels import GramSource

log = logging.getLogger(__name__)

_TINY = np.finfo(np.float64).smallest_subnormal


class NnlsSettings(ConfigModel):
    """Settings of the active-set solver.

    Parameters
    ----------
    dual_tolerance : float
        Largest tolerated negative gradient entry (and complementarity product) of the
        equilibrated problem.
    zero_clip : float
        Equilibrated weights at or below this value are dropped from the support.
    max_active_set_iterations : int, optional
        Iteration cap. Defaults to ten times the number of candidates.

    """

    dual_tolerance: PositiveFloat = 1e-10
    zero_clip: PositiveFloat = 1e-12
    max_active_set_iterations: PositiveInt | None = None

    def iteration_cap(self, size: int) -> int:
        """Iteration cap for a problem with ``size`` candidates."""
        if self.max_active_set_iterations is not None:
            return self.max_active_set_iterations
        return 10 * max(size, 1)


@dataclass(frozen=True, eq=False)
class SparseCoefficients:
    """Sparse nonnegative coefficients ``s`` of one node.

    ``indices`` are candidate node ids in ascending order with strictly positive
    ``weights``. ``residual_sq`` is ``||phi(x_i) - Phi s||**2`` in the shifted
    exp domain of the Gram system that produced it.
    """

    anchor: int
    indices: np.ndarray
    weights: np.ndarray
    residual_sq: float
    iterations: int = 0

    def __post_init__(self):
        """Validate the support."""
        if len(self.indices) != len(self.weights):
            raise ValueError("indices and weights differ in length")
        if np.any(self.weights <= 0):
            raise ValueError(f"node {self.anchor}: weights must be strictly positive")
        if np.any(self.indices == self.anchor):
            raise ValueError(f"node {self.anchor}: the anchor cannot be in its own support")
        if np.any(np.diff(self.indices) <= 0):
            raise ValueError(f"node {self.anchor}: indices must be strictly increasing")

    @classmethod
    def from_entries(cls, anchor: int, entries, residual_sq: float = 0.0, iterations: int = 0):
        """Create coefficients from ``(id, weight)`` pairs in any order."""
        entries = sorted((int(j), float(w)) for j, w in entries)
        indices = np.array([j for j, _ in entries], dtype=np.int64)
        weights = np.array([w for _, w in entries], dtype=np.float64)
        return cls(anchor, indices, weights, float(residual_sq), iterations)

    @property
    def entries(self) -> list[tuple[int, float]]:
        """``(id, weight)`` pairs in ascending id order."""
        return [(int(j), float(w)) for j, w in zip(self.indices, self.weights, strict=True)]

    @property
    def sum_weights(self) -> float:
        """``1^T s``."""
        return float(self.weights.sum())

    @property
    def support_size(self) -> int:
        """``||s||_0``."""
        return len(self.indices)

    @property
    def max_weight(self) -> float:
        """``||s||_inf``, zero for an empty support."""
        return float(self.weights.max()) if len(self.weights) else 0.0


@dataclass
class _ScaledSystem:
    """Equilibrated view of a :class:`GramSource` with lazily computed columns."""

    source: GramSource
    half_diagonal: np.ndarray
    log_scale: float
    rhs: np.ndarray
    _columns: dict[int, np.ndarray] = field(default_factory=dict)

    @classmethod
    def of(cls, source: GramSource) -> _ScaledSystem | None:
        half = 0.5 * np.asarray(source.diagonal, dtype=np.float64)
        log_rhs = np.asarray(source.anchor_column, dtype=np.float64) - half
        log_scale = float(log_rhs.max())
        if not np.isfinite(log_scale):
            return None
        return cls(source, half, log_scale, np.exp(log_rhs - log_scale))

    @property
    def size(self) -> int:
        return self.rhs.size

    def columns(self, positions: np.ndarray) -> np.ndarray:
        """Equilibrated Gram columns at ``positions``, shape ``(size, len(positions))``."""
        missing = [int(p) for p in positions if int(p) not in self._columns]
        if missing:
            rows = np.arange(self.size)
            log_block = self.source.block(rows, missing)
            block = np.exp(log_block - self.half_diagonal[:, None] - self.half_diagonal[missing])
            for k, p in enumerate(missing):
                column = block[:, k]
                column[p] = 1.0
                self._columns[p] = column
        if len(positions) == 0:
            return np.zeros((self.size, 0))
        return np.column_stack([self._columns[int(p)] for p in positions])

    def to_weights(self, positions: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Map equilibrated weights back to ``s``.

        Positive weights below the float range are stored as the smallest subnormal so
        the support survives very narrow kernels.
        """
        weights = u * np.exp(self.log_scale - self.half_diagonal[positions])
        return np.where(u > 0, np.maximum(weights, _TINY), weights)

    def to_scaled(self, positions: np.ndarray, weights: np.ndarray) -> np.ndarray:
        """Map ``s`` to equilibrated weights."""
        return weights * np.exp(self.half_diagonal[positions] - self.log_scale)

    def residual_sq(self, positions: np.ndarray, u: np.ndarray) -> float:
        """Shifted exp-domain ``||phi_i - Phi s||**2`` for equilibrated weights ``u``."""
        shift = self.source.shift
        anchor_term = np.exp(self.source.anchor_self - shift)
        if len(positions) == 0:
            return float(anchor_term)
        gram = self.columns(positions)[positions, :]
        fit = 2.0 * self.rhs[positions] @ u - u @ gram @ u
        return float(max(anchor_term - np.exp(2.0 * self.log_scale - shift) * fit, 0.0))


def _solve_passive(gram: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        try:
            return linalg.solve(gram, rhs, assume_a="pos", check_finite=False)
        except linalg.LinAlgError:
            return linalg.lstsq(gram, rhs, check_finite=False)[0]


def _coefficients(system, anchor, positions, u, iterations) -> SparseCoefficients:
    candidates = np.asarray(system.source.candidates)
    weights = system.to_weights(positions, u)
    order = np.argsort(candidates[positions], kind="stable")
    return SparseCoefficients(
        anchor=int(anchor),
        indices=candidates[positions][order].astype(np.int64),
        weights=weights[order],
        residual_sq=system.residual_sq(positions, u),
        iterations=iterations,
    )


def _lawson_hanson(system: _ScaledSystem, settings: NnlsSettings, anchor: int):
    """Run the active-set iteration, returning passive positions, weights, iterations."""
    size = system.size
    tol = settings.dual_tolerance
    cap = settings.iteration_cap(size)
    u = np.zeros(size)
    passive = np.zeros(size, dtype=bool)
    blocked = np.zeros(size, dtype=bool)
    iterations = 0

    def fail():
        keep = np.flatnonzero(u > settings.zero_clip)
        best = _coefficients(system, anchor, keep, u[keep], iterations)
        raise NonConvergenceError(
            f"node {anchor}: active-set solver exceeded {cap} iterations",
            reason="non-convergence",
            node=anchor,
            best_iterate=best,
        )

    while True:
        active_positions = np.flatnonzero(passive)
        gradient_free = system.rhs - system.columns(active_positions) @ u[active_positions]
        entering = ~passive & ~blocked & (gradient_free > tol)
        if not entering.any():
            break
        if iterations >= cap:
            fail()
        j = int(np.argmax(np.where(entering, gradient_free, -np.inf)))
        passive[j] = True
        before = u.copy()
        while True:
            iterations += 1
            positions = np.flatnonzero(passive)
            gram = system.columns(positions)[positions, :]
            z = _solve_passive(gram, system.rhs[positions])
            if np.all(z > 0):
                u[:] = 0.0
                u[positions] = z
                break
            if iterations >= cap:
                fail()
            current = u[positions]
            nonpositive = z <= 0
            gap = current[nonpositive] - z[nonpositive]
            ratios = np.divide(
                current[nonpositive], gap, out=np.zeros_like(gap), where=gap > 0
            )
            alpha = float(ratios.min())
            step = current + alpha * (z - current)
            u[positions] = step
            dropped = positions[step <= settings.zero_clip]
            u[dropped] = 0.0
            passive[dropped] = False
            if not passive.any():
                break
        # an index that re-enters without moving the iterate would cycle
        if np.any(u != before):
            blocked[:] = False
        elif not passive[j]:
            blocked[j] = True

    positions = np.flatnonzero(passive & (u > settings.zero_clip))
    if positions.size and positions.size != np.count_nonzero(passive):
        gram = system.columns(positions)[positions, :]
        z = _solve_passive(gram, system.rhs[positions])
        if np.all(z > settings.zero_clip):
            u[:] = 0.0
            u[positions] = z
    return positions, u[positions], iterations


def solve_svg_node(gram: GramSource, settings: NnlsSettings | None = None) -> SparseCoefficients:
    """Solve the nonnegative least squares problem of one node.

    Parameters
    ----------
    gram : GramSource
        Log-kernel Gram system of the node, anchor excluded from the candidates.
    settings : NnlsSettings, optional
        Solver settings.

    Returns
    -------
    SparseCoefficients
        Positive weights on the support, ordered by candidate id.

    Raises
    ------
    NonConvergenceError
        If the iteration cap is exceeded. The best iterate is attached.

    """
    settings = settings or NnlsSettings()
    system = _ScaledSystem.of(gram)
    if system is None:
        residual = float(np.exp(gram.anchor_self - gram.shift))
        return SparseCoefficients(
            int(gram.anchor), np.zeros(0, np.int64), np.zeros(0), residual, iterations=0
        )
    positions, u, iterations = _lawson_hanson(system, settings, int(gram.anchor))
    coeffs = _coefficients(system, gram.anchor, positions, u, iterations)
    log.debug(
        f"node {gram.anchor}: support {coeffs.support_size}/{system.size} "
        f"after {iterations} iterations"
    )
    return coeffs


def kkt_violation(gram: GramSource, coeffs: SparseCoefficients) -> tuple[float, float]:
    """Recompute the optimality certificate of ``coeffs`` on the equilibrated problem.

    Returns
    -------
    tuple of float
        Dual infeasibility ``max(0, -min gradient)`` and the largest complementarity
        product ``|u_j * gradient_j|`` over the support.

    """
    system = _ScaledSystem.of(gram)
    if system is None:
        return 0.0, 0.0
    position_of = {int(c): p for p, c in enumerate(np.asarray(gram.candidates))}
    positions = np.array([position_of[int(j)] for j in coeffs.indices], dtype=np.int64)
    u = system.to_scaled(positions, coeffs.weights)
    gradient = system.columns(positions) @ u - system.rhs
    dual = float(max(0.0, -gradient.min()))
    complementarity = float(np.abs(u * gradient[positions]).max()) if positions.size else 0.0
    return dual, complementarity
