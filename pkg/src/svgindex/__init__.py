# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""svg-index builds and audits navigable graph indices for kernel vector search."""

from .__version__ import __version__
from .build import (
    BuildConfig,
    CandidatePool,
    PruneRule,
    RuleKind,
    build_pruned,
    build_svg,
    build_svg_l0,
    solve_svg,
)
from .data import (
    Dataset,
    brute_force_top1,
    generate_uniform,
    ground_truth,
    load_csv,
    load_dataset,
    load_fvecs,
    save_csv,
    save_dataset,
    save_fvecs,
)
from .exceptions import (
    DataFormatError,
    DimensionMismatchError,
    EmptySupportError,
    GraphError,
    LinearProgramError,
    NonConvergenceError,
    SolverError,
    SvgError,
)
from .graph import DegreeStats, DirectedGraph, load_graph, save_graph
from .kernels import KernelSpec, LogGram, SimilarityKind, build_log_gram, kernel, similarity
from .navigability import (
    EvalMode,
    NavigabilityReport,
    audit_svg,
    certify_quasi_monotone,
    epsilon_exponential,
    epsilon_general,
    evaluate_recall,
    recall_at_1,
)
from .search import (
    SearchParams,
    SearchResult,
    beam_search_kernel,
    greedy_search_euclidean,
    greedy_search_kernel,
    search,
    search_indexed,
)
from .solvers import (
    NnlsSettings,
    SparseCoefficients,
    decision_function,
    nonneg_subspace_pursuit,
    solve_svg_node,
)
from .warnings import NonNormalizedKernelWarning
