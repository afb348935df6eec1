# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

from itertools import combinations
import logging

import numpy as np
import pytest

from svgindex import generate_uniform
from svgindex.kernels import KernelColumnOracle, KernelSpec, LogGram, build_log_gram
from svgindex.solvers import (
    attention_scores,
    nonneg_subspace_pursuit,
    residual_sq,
    solve_svg_node,
)

log = logging.getLogger(__name__)


def _others(n, i):
    return [j for j in range(n) if j != i]


def test_attention_and_residual_match_dense_formulas(rbf, uniform2d):
    gram = build_log_gram(rbf, uniform2d, 0, _others(uniform2d.n, 0))
    K = gram.exp_block()
    k = gram.exp_anchor_column()
    positions = np.array([2, 5, 9])
    weights = np.array([0.3, 0.1, 0.05])
    s = np.zeros(gram.size)
    s[positions] = weights
    assert np.allclose(attention_scores(gram, positions, weights), k - K @ s, atol=1e-12)
    expected = gram.exp_anchor_self() - 2 * k @ s + s @ K @ s
    assert residual_sq(gram, positions, weights) == pytest.approx(expected, abs=1e-12)
    assert np.allclose(attention_scores(gram, [], []), k)
    assert residual_sq(gram, [], []) == pytest.approx(gram.exp_anchor_self())


def test_orthonormal_dictionary_exact_recovery():
    column = np.array([0.5, 0.0, 0.3, 0.0, 0.2, 0.0])
    gram = LogGram.from_kernel_values(float(column @ column), column, np.eye(6))
    coeffs = nonneg_subspace_pursuit(gram, 3)
    assert coeffs.indices.tolist() == [1, 3, 5]
    assert np.allclose(coeffs.weights, [0.5, 0.3, 0.2], atol=1e-12)
    assert coeffs.residual_sq < 1e-10


def test_degree_bound_is_respected(rbf, uniform8d):
    for i in range(0, uniform8d.n, 7):
        gram = build_log_gram(rbf, uniform8d, i, _others(uniform8d.n, i))
        for M in (1, 3, 6):
            coeffs = nonneg_subspace_pursuit(gram, M)
            assert 1 <= coeffs.support_size <= M
            assert np.all(coeffs.weights > 0)
            assert i not in coeffs.indices


def test_exhaustive_degree_equals_svg():
    data = generate_uniform(12, 2, seed=4)
    spec = KernelSpec(sigma=0.5)
    for i in range(data.n):
        gram = build_log_gram(spec, data, i, _others(data.n, i))
        svg = solve_svg_node(gram)
        l0 = nonneg_subspace_pursuit(gram, data.n - 1)
        assert l0.indices.tolist() == svg.indices.tolist()
        assert np.allclose(l0.weights, svg.weights, atol=1e-8)


def test_oracle_and_dense_sources_agree(rbf, uniform2d):
    candidates = _others(uniform2d.n, 3)
    dense = nonneg_subspace_pursuit(build_log_gram(rbf, uniform2d, 3, candidates), 4)
    lazy = nonneg_subspace_pursuit(KernelColumnOracle(rbf, uniform2d, 3, candidates), 4)
    assert dense.indices.tolist() == lazy.indices.tolist()
    assert np.allclose(dense.weights, lazy.weights, atol=1e-10)


def test_close_to_exhaustive_subset_optimum(rng):
    spec = KernelSpec(sigma=0.3)
    ratios, matches = [], 0
    for _ in range(100):
        points = generate_uniform(9, 2, seed=int(rng.integers(1 << 30)))
        gram = build_log_gram(spec, points, 0, list(range(1, 9)))
        pursuit = nonneg_subspace_pursuit(gram, 2)
        best, best_support = np.inf, None
        for pair in combinations(range(8), 2):
            candidate = solve_svg_node(gram.subgram(list(pair)))
            if candidate.residual_sq < best:
                best, best_support = candidate.residual_sq, candidate.indices.tolist()
        assert pursuit.residual_sq >= best * (1 - 1e-9) - 1e-15
        ratios.append(pursuit.residual_sq / best)
        matches += pursuit.indices.tolist() == best_support
    log.info(f"exact support match rate {matches / 100:.2f}")
    assert np.median(ratios) <= 1.05


def test_invalid_arguments(rbf, uniform2d):
    gram = build_log_gram(rbf, uniform2d, 0, [1, 2, 3])
    with pytest.raises(ValueError, match="max_degree must be at least 1"):
        nonneg_subspace_pursuit(gram, 0)
    with pytest.raises(ValueError, match="max_iterations must be at least 1"):
        nonneg_subspace_pursuit(gram, 2, max_iterations=0)
    assert nonneg_subspace_pursuit(gram, 10).support_size <= 3


def test_search_callback_limits_the_candidates():
    column = np.array([0.5, 0.0, 0.3, 0.0, 0.2, 0.0])
    gram = LogGram.from_kernel_values(float(column @ column), column, np.eye(6))
    rounds = []

    def search(score):
        rounds.append(score(np.arange(6)))
        return np.array([2, 4, 5])

    coeffs = nonneg_subspace_pursuit(gram, 3, search=search)
    assert coeffs.indices.tolist() == [3, 5]
    assert np.allclose(coeffs.weights, [0.3, 0.2], atol=1e-12)
    # the second round scores against the residual, which vanishes on the support
    assert np.allclose(rounds[0], column / column.max())
    assert np.allclose(rounds[1][[2, 4]], 0.0, atol=1e-12)
    assert rounds[1][0] == pytest.approx(1.0)


def test_full_search_callback_matches_the_scan(rbf, uniform2d):
    gram = build_log_gram(rbf, uniform2d, 4, _others(uniform2d.n, 4))
    scan = nonneg_subspace_pursuit(gram, 3)
    searched = nonneg_subspace_pursuit(gram, 3, search=lambda score: np.arange(gram.size))
    assert searched.indices.tolist() == scan.indices.tolist()
    assert np.allclose(searched.weights, scan.weights)
    positions, weights, targets = np.array([2, 5]), np.array([0.3, 0.1]), np.array([7, 1, 3])
    everything = attention_scores(gram, positions, weights)
    assert np.allclose(attention_scores(gram, positions, weights, targets), everything[targets])
