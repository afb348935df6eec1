# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the SVM decision function induced by SVG coefficients.

With ``w = phi(x_i) - sum_j s_j phi(x_j)`` the raw score of a point is
``F(x) = <w, phi(x)> = K(x_i, x) - sum_j s_j K(x_j, x)``. The offset ``b`` and the
normalization are chosen so that ``f(x_i) = 1`` and ``f(x_j) = -1`` for support
vectors. Every value is evaluated through kernel calls, divided by ``K(x_i, x_i)``.
"""

import logging

import numpy as np

from ..data import Dataset
from ..exceptions import DimensionMismatchError, EmptySupportError, SolverError
from ..kernels import KernelSpec, pairwise_log_kernel, self_similarity
from .nnls import SparseCoefficients

log = logging.getLogger(__name__)


def _raw_scores(spec: KernelSpec, data: Dataset, coeffs: SparseCoefficients, points) -> np.ndarray:
    anchor_row = data.values[coeffs.anchor]
    scale = float(self_similarity(spec, anchor_row)[0]) * spec.inverse_width
    anchor_term = pairwise_log_kernel(spec, points, anchor_row)[:, 0]
    support_terms = pairwise_log_kernel(spec, points, data.values[coeffs.indices])
    log_w = np.log(coeffs.weights)
    return np.exp(anchor_term - scale) - np.exp(support_terms + log_w - scale).sum(axis=1)


def decision_function(spec: KernelSpec, data: Dataset, coeffs: SparseCoefficients, x) -> float:
    """Evaluate the normalized decision function of node ``coeffs.anchor`` at ``x``.

    Parameters
    ----------
    spec : KernelSpec
        Kernel the coefficients were computed with.
    data : Dataset
        Indexed vectors.
    coeffs : SparseCoefficients
        Coefficients of the node.
    x : array-like
        Point to classify.

    Returns
    -------
    float
        ``1`` at the node itself, ``-1`` at its support vectors, and below ``-1`` at
        every other indexed vector.

    Raises
    ------
    EmptySupportError
        If the support is empty, in which case the offset is undefined.
    SolverError
        If the node and its support are not separated (``f(x_i) == f(x_j)``).

    """
    if coeffs.support_size == 0:
        raise EmptySupportError(
            f"node {coeffs.anchor}: decision function needs a nonempty support",
            reason="empty-support",
            node=coeffs.anchor,
        )
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size != data.d:
        raise DimensionMismatchError(
            f"point dimension {x.size} != data dimension {data.d}", reason="dimension-mismatch"
        )
    reference = coeffs.indices[int(np.argmax(coeffs.weights))]
    anchor_value, support_value, value = _raw_scores(
        spec,
        data,
        coeffs,
        np.vstack([data.values[coeffs.anchor], data.values[reference], x]),
    )
    margin = anchor_value - support_value
    if not margin > 0:
        raise SolverError(
            f"node {coeffs.anchor}: margin {margin!r} is not positive",
            reason="degenerate-margin",
            node=coeffs.anchor,
        )
    offset = -0.5 * (anchor_value + support_value)
    return float((value + offset) / (anchor_value + offset))
