# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Navigability audit: slack values, certificates, Delaunay oracle, and recall."""

from .certificate import certify_quasi_monotone, search_targets
from .delaunay import (
    DelaunayNeighbors,
    DelaunaySubsetResult,
    check_delaunay_subset,
    delaunay_graph,
    delaunay_neighbors_lp,
    delaunay_pair_lp,
)
from .epsilon import epsilon_exponential, epsilon_general
from .recall import (
    EvalMode,
    EvalModeKind,
    RecallResult,
    evaluate_recall,
    kernel_medoid,
    recall_at_1,
)
from .report import EpsilonSummary, HistogramBin, NavigabilityReport, audit_svg
