# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Solvers for SVG node subproblems."""

from .decision import decision_function
from .nnls import NnlsSettings, SparseCoefficients, kkt_violation, solve_svg_node
from .pursuit import (
    DEFAULT_PURSUIT_ITERATIONS,
    CandidateSearch,
    attention_scores,
    nonneg_subspace_pursuit,
    residual_sq,
)
