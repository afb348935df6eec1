# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the navigability audit of support vector graphs."""

from __future__ import annotations

from collections.abc import Sequence
import logging
import time

import numpy as np
from pydantic import NonNegativeFloat, NonNegativeInt

from ..build import graph_from_coefficients, solve_svg
from ..common import ConfigModel
from ..data import Dataset
from ..graph import DegreeStats
from ..kernels import KernelSpec, SimilarityKind, pairwise_similarity
from ..search import SearchParams
from ..solvers import NnlsSettings
from .certificate import certify_quasi_monotone
from .delaunay import DelaunaySubsetResult, check_delaunay_subset
from .epsilon import epsilon_exponential, epsilon_general
from .recall import EvalMode, RecallResult, evaluate_recall

log = logging.getLogger(__name__)


class EpsilonSummary(ConfigModel):
    """Distribution summary of per-node slack values."""

    mean: NonNegativeFloat
    p95: NonNegativeFloat
    max: NonNegativeFloat


class HistogramBin(ConfigModel):
    """One bin of a slack histogram, ``[lower, upper)`` except for the last bin."""

    lower: float
    upper: float
    count: NonNegativeInt


class NavigabilityReport(ConfigModel):
    """Audit of one support vector graph.

    Parameters
    ----------
    dataset : str
        Dataset name.
    n, d : int
        Dataset shape.
    kernel : str
        Kernel label.
    degree : DegreeStats
        Out-degree statistics of the graph.
    epsilon_general, epsilon_exponential : list of float
        Per-node slack values.
    violations : list of tuple
        Failing ``(i, t)`` pairs of the certificate.
    recall : list of RecallResult
        One entry per evaluated mode.
    delaunay : DelaunaySubsetResult, optional
        Result of the Delaunay subset check when requested.

    """

    dataset: str
    n: NonNegativeInt
    d: NonNegativeInt
    kernel: str
    degree: DegreeStats
    epsilon_general: list[NonNegativeFloat]
    epsilon_exponential: list[NonNegativeFloat]
    violations: list[tuple[int, int]]
    recall: list[RecallResult] = []
    delaunay: DelaunaySubsetResult | None = None

    @property
    def epsilon(self) -> float:
        """``max_i eps_i`` of the general slack."""
        return max(self.epsilon_general, default=0.0)

    def _values(self, kind: str) -> np.ndarray:
        if kind == "general":
            return np.asarray(self.epsilon_general)
        if kind == "exponential":
            return np.asarray(self.epsilon_exponential)
        raise ValueError(f"unknown slack kind {kind!r}")

    def epsilon_summary(self, kind: str = "general") -> EpsilonSummary:
        """Mean, 95th percentile, and maximum of the slack values."""
        values = self._values(kind)
        if values.size == 0:
            return EpsilonSummary(mean=0.0, p95=0.0, max=0.0)
        return EpsilonSummary(
            mean=float(values.mean()),
            p95=float(np.percentile(values, 95)),
            max=float(values.max()),
        )

    def epsilon_histogram(self, bins: int = 20, kind: str = "general") -> list[HistogramBin]:
        """Histogram of the slack values with ``bins`` equal-width bins."""
        counts, edges = np.histogram(self._values(kind), bins=bins)
        return [
            HistogramBin(lower=float(edges[b]), upper=float(edges[b + 1]), count=int(counts[b]))
            for b in range(bins)
        ]

    def summary_rows(self) -> list[tuple[str, str]]:
        """``(metric, value)`` rows of the CSV summary."""
        general = self.epsilon_summary("general")
        exponential = self.epsilon_summary("exponential")
        rows = [
            ("dataset", self.dataset),
            ("n", str(self.n)),
            ("d", str(self.d)),
            ("kernel", self.kernel),
            ("mean_degree", repr(self.degree.mean)),
            ("max_degree", str(self.degree.max)),
            ("epsilon", repr(self.epsilon)),
            ("epsilon_mean", repr(general.mean)),
            ("epsilon_p95", repr(general.p95)),
            ("epsilon_exponential_max", repr(exponential.max)),
            ("epsilon_exponential_mean", repr(exponential.mean)),
            ("violations", str(len(self.violations))),
        ]
        for result in self.recall:
            rows.append((f"recall[{result.mode},L={result.queue_length}]", repr(result.recall)))
        if self.delaunay is not None:
            rows.append(("delaunay_checked", str(self.delaunay.checked)))
            rows.append(("delaunay_exceptions", str(len(self.delaunay.exceptions))))
            rows.append(("delaunay_degenerate", str(len(self.delaunay.degenerate))))
        return rows


def audit_svg(
    data: Dataset,
    kernel: KernelSpec,
    settings: NnlsSettings | None = None,
    params: SearchParams | None = None,
    modes: Sequence[EvalMode] = (),
    delaunay_check: bool = False,
    jobs: int = 1,
) -> NavigabilityReport:
    """Build the support vector graph of ``data`` and audit it.

    Parameters
    ----------
    data : Dataset
        Indexed vectors.
    kernel : KernelSpec
        Exponential kernel.
    settings : NnlsSettings, optional
        Solver settings.
    params : SearchParams, optional
        Queue length of the recall evaluations.
    modes : sequence of EvalMode, optional
        Recall evaluations to run.
    delaunay_check : bool, optional
        Whether to check the edges against the Delaunay oracle. Needs the
        ``euclidean_sq`` similarity.
    jobs : int, optional
        Worker threads of the build and the Delaunay check.

    """
    if delaunay_check and kernel.similarity != SimilarityKind.EUCLIDEAN_SQ:
        raise ValueError("the Delaunay check needs the euclidean_sq similarity")
    start = time.perf_counter()
    similarity_matrix = pairwise_similarity(kernel, data.values, data.values)
    coefficients = solve_svg(data, kernel, settings, jobs, similarity_matrix)
    g = graph_from_coefficients(data.n, coefficients)
    general = [epsilon_general(c) for c in coefficients]
    exponential = [epsilon_exponential(c) for c in coefficients]
    violations = certify_quasi_monotone(g, data, kernel, general, similarity_matrix)
    recall = [
        evaluate_recall(g, data, kernel, params, mode, similarity_matrix) for mode in modes
    ]
    delaunay = check_delaunay_subset(g, data) if delaunay_check else None
    report = NavigabilityReport(
        dataset=data.name,
        n=data.n,
        d=data.d,
        kernel=kernel.label(),
        degree=g.degree_stats(),
        epsilon_general=general,
        epsilon_exponential=exponential,
        violations=violations,
        recall=recall,
        delaunay=delaunay,
    )
    log.info(
        f"Audited {data.name}: eps={report.epsilon:.4g}, {len(violations)} violations "
        f"in {time.perf_counter() - start:.2f}s"
    )
    return report
