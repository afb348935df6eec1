# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing similarity functions and exponential kernels.

The exponential kernel is ``K(x, y) = exp(sim(x, y) / sigma**2)``. Every solver-facing
evaluation goes through log-kernel values ``sim / sigma**2`` so that small kernel
widths never underflow. Exp-domain values are only formed after subtracting a
per-problem shift.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum
import logging
from typing import TYPE_CHECKING, Protocol

import numpy as np
from pydantic import Field, model_validator
from scipy.spatial.distance import cdist

from .common import ConfigModel
from .exceptions import DimensionMismatchError

if TYPE_CHECKING:
    from .data import Dataset

log = logging.getLogger(__name__)


class SimilarityKind(str, Enum):
    """Similarity underlying an exponential kernel."""

    EUCLIDEAN_SQ = "euclidean_sq"
    DOT_PRODUCT = "dot_product"
    NEG_SQUARED_DISTANCE = "neg_squared_distance"


class KernelSpec(ConfigModel):
    """Exponential kernel specification.

    Parameters
    ----------
    similarity : SimilarityKind
        ``euclidean_sq`` for ``-||x - y||**2``, ``dot_product`` for ``<x, y>``, or
        ``neg_squared_distance`` for ``-dist(x, y)**2`` with a user distance.
    sigma : float
        Kernel width. Must be positive and finite.
    distance : str or callable, optional
        Distance used by ``neg_squared_distance``. Either a metric name understood by
        :func:`scipy.spatial.distance.cdist` (``"cityblock"``, ``"hamming"``, ...) or a
        callable taking two 1-D arrays and returning a float.

    """

    similarity: SimilarityKind = SimilarityKind.EUCLIDEAN_SQ
    sigma: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    distance: str | Callable[[np.ndarray, np.ndarray], float] | None = None

    @model_validator(mode="after")
    def _check_distance(self):
        if self.similarity == SimilarityKind.NEG_SQUARED_DISTANCE and self.distance is None:
            raise ValueError("neg_squared_distance similarity requires a distance")
        if self.similarity != SimilarityKind.NEG_SQUARED_DISTANCE and self.distance is not None:
            raise ValueError(f"{self.similarity.value} similarity does not take a distance")
        return self

    @property
    def normalized(self) -> bool:
        """Whether ``K(x, x) = 1`` for every ``x``."""
        return self.similarity != SimilarityKind.DOT_PRODUCT

    @property
    def inverse_width(self) -> float:
        """Factor ``1 / sigma**2`` turning similarities into log-kernel values."""
        return 1.0 / (self.sigma * self.sigma)

    def with_sigma(self, sigma: float) -> KernelSpec:
        """Return a copy of the specification with another kernel width."""
        return self.replace(sigma=sigma)

    def label(self) -> str:
        """Short label used in CSV output."""
        if self.similarity == SimilarityKind.NEG_SQUARED_DISTANCE:
            name = self.distance if isinstance(self.distance, str) else "custom"
            return f"{name},{self.sigma!r}"
        short = {SimilarityKind.EUCLIDEAN_SQ: "euc", SimilarityKind.DOT_PRODUCT: "dot"}
        return f"{short[self.similarity]},{self.sigma!r}"


def _as_rows(x) -> np.ndarray:
    rows = np.asarray(x, dtype=np.float64)
    if rows.ndim == 1:
        rows = rows[np.newaxis, :]
    if rows.ndim != 2:
        raise ValueError(f"expected a vector or a matrix, got an array of shape {rows.shape}")
    return rows


def pairwise_similarity(spec: KernelSpec, X, Y) -> np.ndarray:
    """Compute the similarity matrix between the rows of ``X`` and the rows of ``Y``."""
    X = _as_rows(X)
    Y = _as_rows(Y)
    if X.shape[1] != Y.shape[1]:
        raise DimensionMismatchError(
            f"dimension mismatch: {X.shape[1]} != {Y.shape[1]}", reason="dimension-mismatch"
        )
    if spec.similarity == SimilarityKind.EUCLIDEAN_SQ:
        return -cdist(X, Y, "sqeuclidean")
    if spec.similarity == SimilarityKind.DOT_PRODUCT:
        return X @ Y.T
    distances = cdist(X, Y, spec.distance)
    return -(distances * distances)


def pairwise_log_kernel(spec: KernelSpec, X, Y) -> np.ndarray:
    """Compute log-kernel values ``sim / sigma**2`` between rows of ``X`` and ``Y``."""
    return pairwise_similarity(spec, X, Y) * spec.inverse_width


def self_similarity(spec: KernelSpec, X) -> np.ndarray:
    """Compute ``sim(x, x)`` for every row of ``X``."""
    X = _as_rows(X)
    if spec.similarity == SimilarityKind.EUCLIDEAN_SQ:
        return np.zeros(X.shape[0])
    if spec.similarity == SimilarityKind.DOT_PRODUCT:
        return np.einsum("ij,ij->i", X, X)
    return np.array([pairwise_similarity(spec, row, row)[0, 0] for row in X])


def _check_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise DimensionMismatchError(
            f"dimension mismatch: {x.size} != {y.size}", reason="dimension-mismatch"
        )
    return x, y


def similarity(spec: KernelSpec, x, y) -> float:
    """Evaluate the similarity between two vectors."""
    x, y = _check_pair(x, y)
    return float(pairwise_similarity(spec, x, y)[0, 0])


def log_kernel(spec: KernelSpec, x, y) -> float:
    """Evaluate ``log K(x, y)`` without exponentiation."""
    return similarity(spec, x, y) * spec.inverse_width


def kernel(spec: KernelSpec, x, y) -> float:
    """Evaluate the exponential kernel ``K(x, y)``.

    The result underflows to zero for very small widths; use :func:`log_kernel` there.
    """
    return float(np.exp(log_kernel(spec, x, y)))


class GramSource(Protocol):
    """Read interface shared by :class:`LogGram` and :class:`KernelColumnOracle`.

    All values are log-kernel values. Positions index into ``candidates``.
    """

    anchor: int
    candidates: np.ndarray
    anchor_self: float
    anchor_column: np.ndarray
    diagonal: np.ndarray
    shift: float

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray: ...

    def subgram(self, positions: Sequence[int]) -> LogGram: ...


def _anchor_shift(anchor_column: np.ndarray) -> float:
    finite = anchor_column[np.isfinite(anchor_column)]
    return float(finite.max()) if finite.size else 0.0


@dataclass(frozen=True, eq=False)
class LogGram:
    """Dense log-kernel Gram system of one node subproblem.

    Parameters
    ----------
    anchor : int
        Node ``i`` the subproblem separates from the candidates.
    candidates : numpy.ndarray
        Candidate node ids, anchor excluded.
    anchor_self : float
        ``log K(x_i, x_i)``.
    anchor_column : numpy.ndarray
        ``log K(x_i, x_c)`` for every candidate ``c``.
    candidate_block : numpy.ndarray
        ``log K(x_c, x_c')`` among candidates.
    shift : float
        Global exponent shift ``m``. Exp-domain values are ``exp(logval - m)``.

    """

    anchor: int
    candidates: np.ndarray
    anchor_self: float
    anchor_column: np.ndarray
    candidate_block: np.ndarray
    shift: float

    def __post_init__(self):
        """Validate shapes."""
        m = len(self.candidates)
        if m == 0:
            raise ValueError(f"node {self.anchor}: empty candidate list")
        if self.anchor_column.shape != (m,) or self.candidate_block.shape != (m, m):
            raise ValueError(
                f"node {self.anchor}: inconsistent Gram shapes {self.anchor_column.shape} "
                f"and {self.candidate_block.shape} for {m} candidates"
            )

    @classmethod
    def from_kernel_values(
        cls,
        anchor_self: float,
        anchor_column,
        candidate_block,
        anchor: int = 0,
        candidates=None,
    ) -> LogGram:
        """Create a Gram system from exp-domain kernel values.

        Zero entries become ``-inf`` log values.
        """
        anchor_column = np.asarray(anchor_column, dtype=np.float64)
        candidate_block = np.asarray(candidate_block, dtype=np.float64)
        if candidates is None:
            candidates = np.arange(anchor + 1, anchor + 1 + anchor_column.size)
        with np.errstate(divide="ignore"):
            log_column = np.log(anchor_column)
            log_block = np.log(candidate_block)
            log_self = float(np.log(anchor_self))
        return cls(
            anchor=anchor,
            candidates=np.asarray(candidates, dtype=np.int64),
            anchor_self=log_self,
            anchor_column=log_column,
            candidate_block=log_block,
            shift=_anchor_shift(log_column),
        )

    @property
    def size(self) -> int:
        """Number of candidates."""
        return len(self.candidates)

    @property
    def diagonal(self) -> np.ndarray:
        """Log self-kernel values of the candidates."""
        return np.diag(self.candidate_block).copy()

    def block(self, rows, cols) -> np.ndarray:
        """Log-kernel values between candidate positions ``rows`` and ``cols``."""
        return self.candidate_block[np.ix_(np.asarray(rows, int), np.asarray(cols, int))]

    def subgram(self, positions) -> LogGram:
        """Restrict the system to the candidates at ``positions``, keeping the shift."""
        positions = np.asarray(positions, dtype=np.int64)
        return LogGram(
            anchor=self.anchor,
            candidates=self.candidates[positions],
            anchor_self=self.anchor_self,
            anchor_column=self.anchor_column[positions],
            candidate_block=self.block(positions, positions),
            shift=self.shift,
        )

    def with_shift(self, shift: float) -> LogGram:
        """Return the same system with another global exponent shift."""
        return LogGram(
            self.anchor,
            self.candidates,
            self.anchor_self,
            self.anchor_column,
            self.candidate_block,
            float(shift),
        )

    def exp_anchor_self(self) -> float:
        """Shifted exp-domain ``K(x_i, x_i)``."""
        return float(np.exp(self.anchor_self - self.shift))

    def exp_anchor_column(self) -> np.ndarray:
        """Shifted exp-domain anchor column ``k``."""
        return np.exp(self.anchor_column - self.shift)

    def exp_block(self) -> np.ndarray:
        """Shifted exp-domain candidate Gram ``K``."""
        return np.exp(self.candidate_block - self.shift)


def build_log_gram(
    spec: KernelSpec,
    data: Dataset,
    anchor: int,
    candidates,
    similarity_matrix: np.ndarray | None = None,
) -> LogGram:
    """Build the log-kernel Gram system of ``anchor`` against ``candidates``.

    The shift is the largest anchor-to-candidate log value, so the largest exp-domain
    anchor entry equals one.
    """
    candidates = np.asarray(candidates, dtype=np.int64)
    if candidates.size == 0:
        raise ValueError(f"node {anchor}: empty candidate list")
    if np.any(candidates == anchor):
        raise ValueError(f"node {anchor}: the anchor must not be one of its candidates")
    ids = np.concatenate(([anchor], candidates))
    if similarity_matrix is None:
        rows = data.values[ids]
        log_values = pairwise_log_kernel(spec, rows, rows)
    else:
        log_values = similarity_matrix[np.ix_(ids, ids)] * spec.inverse_width
    anchor_column = log_values[0, 1:].copy()
    return LogGram(
        anchor=int(anchor),
        candidates=candidates,
        anchor_self=float(log_values[0, 0]),
        anchor_column=anchor_column,
        candidate_block=log_values[1:, 1:].copy(),
        shift=_anchor_shift(anchor_column),
    )


class KernelColumnOracle:
    """Lazy log-kernel Gram source over a possibly large candidate set.

    Blocks are computed on demand from the data, or sliced from a precomputed
    similarity matrix when one is given. The read interface matches :class:`LogGram`.
    """

    def __init__(
        self,
        spec: KernelSpec,
        data: Dataset,
        anchor: int,
        candidates,
        similarity_matrix: np.ndarray | None = None,
    ):
        """Initialize the oracle."""
        self.spec = spec
        self.anchor = int(anchor)
        self.candidates = np.asarray(candidates, dtype=np.int64)
        if self.candidates.size == 0:
            raise ValueError(f"node {anchor}: empty candidate list")
        if np.any(self.candidates == anchor):
            raise ValueError(f"node {anchor}: the anchor must not be one of its candidates")
        self._values = data.values
        self._similarity = similarity_matrix
        inv = spec.inverse_width
        if similarity_matrix is None:
            anchor_row = self._values[self.anchor]
            candidate_rows = self._values[self.candidates]
            self.anchor_column = pairwise_log_kernel(spec, anchor_row, candidate_rows)[0]
            self.anchor_self = float(self_similarity(spec, anchor_row)[0] * inv)
            self.diagonal = self_similarity(spec, candidate_rows) * inv
        else:
            self.anchor_column = similarity_matrix[self.anchor, self.candidates] * inv
            self.anchor_self = float(similarity_matrix[self.anchor, self.anchor] * inv)
            self.diagonal = similarity_matrix[self.candidates, self.candidates] * inv
        self.shift = _anchor_shift(self.anchor_column)

    @property
    def size(self) -> int:
        """Number of candidates."""
        return len(self.candidates)

    def block(self, rows, cols) -> np.ndarray:
        """Log-kernel values between candidate positions ``rows`` and ``cols``."""
        row_ids = self.candidates[np.asarray(rows, dtype=np.int64)]
        col_ids = self.candidates[np.asarray(cols, dtype=np.int64)]
        if self._similarity is not None:
            return self._similarity[np.ix_(row_ids, col_ids)] * self.spec.inverse_width
        return pairwise_log_kernel(self.spec, self._values[row_ids], self._values[col_ids])

    def subgram(self, positions) -> LogGram:
        """Materialize a dense :class:`LogGram` over the candidates at ``positions``."""
        positions = np.asarray(positions, dtype=np.int64)
        return LogGram(
            anchor=self.anchor,
            candidates=self.candidates[positions],
            anchor_self=self.anchor_self,
            anchor_column=self.anchor_column[positions],
            candidate_block=self.block(positions, positions),
            shift=self.shift,
        )
