# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the per-node slack of quasi-monotone navigation."""

import logging

from ..solvers import SparseCoefficients

log = logging.getLogger(__name__)


def epsilon_general(coeffs: SparseCoefficients) -> float:
    """Slack ``max(1^T s, 1) - 1`` valid for any exponential kernel."""
    return max(coeffs.sum_weights, 1.0) - 1.0


def epsilon_exponential(coeffs: SparseCoefficients) -> float:
    """Slack ``max(||s||_0 * ||s||_inf, 1) - 1``."""
    return max(coeffs.support_size * coeffs.max_weight, 1.0) - 1.0
