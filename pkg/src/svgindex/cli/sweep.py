# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the parameter sweeps behind the ``sweep`` subcommand.

A sweep runs one recipe over every dimension of a preset and every seeded realization of
the uniform data. Each realization yields metric values keyed by the cell it belongs to;
cells are then aggregated into a mean and a population standard deviation over seeds.
"""

from __future__ import annotations

from collections.abc import Callable
import csv
from dataclasses import dataclass, field
import io
import logging
from pathlib import Path
import time

import numpy as np
from scipy.spatial.distance import pdist

from ..build import (
    BuildConfig,
    CandidatePool,
    PruneRule,
    RuleKind,
    build_pruned,
    build_svg,
    build_svg_l0,
)
from ..common import map_in_order
from ..data import Dataset, generate_uniform
from ..graph import DirectedGraph
from ..kernels import KernelSpec, SimilarityKind, pairwise_similarity
from ..navigability import EvalMode, EvalModeKind, delaunay_graph, evaluate_recall
from ..search import SearchParams
from .presets import SweepPreset

log = logging.getLogger(__name__)

Key = tuple
Metrics = dict[str, float]

_KEYS = {
    "degree": ("d",),
    "sigma_recall": ("d", "sigma_factor", "L"),
    "method_recall": ("d", "method", "L"),
    "sigma_l0": ("d", "sigma_factor", "L"),
}
_METRICS = {
    "degree": ("svg_degree", "delaunay_degree"),
    "sigma_recall": ("recall", "kernel_evals", "mean_degree"),
    "method_recall": ("recall", "kernel_evals", "mean_degree"),
    "sigma_l0": ("recall", "kernel_evals", "mean_degree"),
}


@dataclass
class SweepTable:
    """Aggregated sweep output with a fixed column order."""

    preset: str
    keys: tuple[str, ...]
    metrics: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)

    @property
    def columns(self) -> list[str]:
        """Key columns followed by ``<metric>_mean`` and ``<metric>_std``."""
        stats = [f"{metric}_{stat}" for metric in self.metrics for stat in ("mean", "std")]
        return [*self.keys, *stats]

    def write_csv(self, stream) -> None:
        """Write the table to a text stream."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_format(value) for value in row])

    def to_csv(self) -> str:
        """Return the table as CSV text."""
        buffer = io.StringIO()
        self.write_csv(buffer)
        return buffer.getvalue()

    def save(self, path: str | Path) -> Path:
        """Write the table to ``path``."""
        path = Path(path)
        with path.open("w", encoding="utf-8", newline="") as stream:
            self.write_csv(stream)
        return path


def _format(value) -> str:
    if isinstance(value, float | np.floating):
        return repr(float(value))
    return str(value)


def median_distance(data: Dataset) -> float:
    """Median pairwise Euclidean distance of ``data``."""
    return float(np.median(pdist(data.values)))


def _eval_mode(preset: SweepPreset, seed: int) -> EvalMode:
    return EvalMode(kind=EvalModeKind(preset.mode), seed=seed)


def _recall_metrics(
    g: DirectedGraph,
    data: Dataset,
    kernel: KernelSpec,
    queue_length: int,
    mode: EvalMode,
    similarity_matrix: np.ndarray,
) -> Metrics:
    result = evaluate_recall(
        g, data, kernel, SearchParams(queue_length=queue_length), mode, similarity_matrix
    )
    return {
        "recall": result.recall,
        "kernel_evals": result.mean_kernel_evals,
        "mean_degree": g.degree_stats().mean,
    }


def _sigma_factors(preset: SweepPreset) -> list[float]:
    if not preset.sigma_factors:
        raise ValueError(f"preset {preset.name} has no sigma_factors")
    return list(preset.sigma_factors)


def _degree(preset: SweepPreset, d: int, seed: int) -> dict[Key, Metrics]:
    if not preset.sigma:
        raise ValueError(f"preset {preset.name} has no sigma")
    data = generate_uniform(preset.n, d, seed)
    kernel = KernelSpec(similarity=SimilarityKind.EUCLIDEAN_SQ, sigma=preset.sigma)
    svg = build_svg(data, kernel)
    delaunay, _ = delaunay_graph(data)
    return {
        (d,): {
            "svg_degree": svg.degree_stats().mean,
            "delaunay_degree": delaunay.degree_stats().mean,
        }
    }


def _sigma_recall(preset: SweepPreset, d: int, seed: int) -> dict[Key, Metrics]:
    data = generate_uniform(preset.n, d, seed)
    median = median_distance(data)
    mode = _eval_mode(preset, seed)
    cells = {}
    for factor in _sigma_factors(preset):
        kernel = KernelSpec(similarity=SimilarityKind.EUCLIDEAN_SQ, sigma=factor * median)
        similarity_matrix = pairwise_similarity(kernel, data.values, data.values)
        g = build_svg(data, kernel, similarity_matrix=similarity_matrix)
        for L in preset.queue_lengths:
            cells[(d, factor, L)] = _recall_metrics(g, data, kernel, L, mode, similarity_matrix)
    return cells


def _method_recall(preset: SweepPreset, d: int, seed: int) -> dict[Key, Metrics]:
    data = generate_uniform(preset.n, d, seed)
    M = preset.degree_for(d)
    ratio = preset.pool_ratio or 2.0
    factor = _sigma_factors(preset)[0]
    kernel = KernelSpec(
        similarity=SimilarityKind.EUCLIDEAN_SQ, sigma=factor * median_distance(data)
    )
    similarity_matrix = pairwise_similarity(kernel, data.values, data.values)
    mrng = PruneRule(kind=RuleKind.MRNG)
    graphs = {
        "svg-l0": build_svg_l0(data, kernel, M),
        "mrng-full-M": build_pruned(data, kernel, mrng, BuildConfig(max_out_degree=M)),
        "mrng-truncated": build_pruned(
            data,
            kernel,
            mrng,
            BuildConfig(max_out_degree=M, pool=CandidatePool.knn(ratio=ratio)),
        ),
    }
    mode = _eval_mode(preset, seed)
    return {
        (d, method, L): _recall_metrics(g, data, kernel, L, mode, similarity_matrix)
        for method, g in graphs.items()
        for L in preset.queue_lengths
    }


def _sigma_l0(preset: SweepPreset, d: int, seed: int) -> dict[Key, Metrics]:
    data = generate_uniform(preset.n, d, seed)
    median = median_distance(data)
    M = preset.degree_for(d)
    mode = _eval_mode(preset, seed)
    cells = {}
    for factor in _sigma_factors(preset):
        kernel = KernelSpec(similarity=SimilarityKind.EUCLIDEAN_SQ, sigma=factor * median)
        similarity_matrix = pairwise_similarity(kernel, data.values, data.values)
        g = build_svg_l0(data, kernel, M)
        for L in preset.queue_lengths:
            cells[(d, factor, L)] = _recall_metrics(g, data, kernel, L, mode, similarity_matrix)
    return cells


RECIPE_FUNCTIONS: dict[str, Callable[[SweepPreset, int, int], dict[Key, Metrics]]] = {
    "degree": _degree,
    "sigma_recall": _sigma_recall,
    "method_recall": _method_recall,
    "sigma_l0": _sigma_l0,
}


def run_sweep(preset: SweepPreset, jobs: int = 1) -> SweepTable:
    """Run every realization of ``preset`` and aggregate the cells.

    Parameters
    ----------
    preset : SweepPreset
        Sweep definition. Realization seeds are ``0 .. preset.seeds - 1``.
    jobs : int, optional
        Worker threads; each (dimension, seed) realization is independent.

    Returns
    -------
    SweepTable
        One row per cell in the order the recipe produces them.

    """
    recipe = RECIPE_FUNCTIONS[preset.recipe]
    units = [(d, seed) for d in preset.dims for seed in range(preset.seeds)]

    def run(unit):
        d, seed = unit
        start = time.perf_counter()
        cells = recipe(preset, d, seed)
        log.info(f"{preset.name}: d={d} seed={seed} done in {time.perf_counter() - start:.2f}s")
        return cells

    results = map_in_order(run, units, jobs)
    table = SweepTable(
        preset=preset.name, keys=_KEYS[preset.recipe], metrics=_METRICS[preset.recipe]
    )
    collected: dict[Key, list[Metrics]] = {}
    for cells in results:
        for key, metrics in cells.items():
            collected.setdefault(key, []).append(metrics)
    for key, samples in collected.items():
        stats = []
        for metric in table.metrics:
            values = np.array([sample[metric] for sample in samples], dtype=np.float64)
            stats.extend([float(values.mean()), float(values.std())])
        table.rows.append((*key, *stats))
    log.info(f"{preset.name}: {len(table.rows)} cells over {len(units)} realizations")
    return table
