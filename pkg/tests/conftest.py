# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

import os

import numpy as np
import pytest

from svgindex import Dataset, KernelSpec, SimilarityKind, generate_uniform


@pytest.fixture(scope="session")
def n_points():
    return int(os.environ.get("SVG_TEST_N") or 40)


@pytest.fixture(scope="session")
def seeds():
    return int(os.environ.get("SVG_TEST_SEEDS") or 3)


@pytest.fixture(scope="session")
def sweep_seeds():
    return int(os.environ.get("SVG_TEST_SWEEP_SEEDS") or 10)


@pytest.fixture
def rbf():
    return KernelSpec(similarity=SimilarityKind.EUCLIDEAN_SQ, sigma=1.0)


@pytest.fixture
def dot():
    return KernelSpec(similarity=SimilarityKind.DOT_PRODUCT, sigma=1.0)


@pytest.fixture
def line3():
    """Points 0, 1 and 2 on the real line."""
    return Dataset([[0.0], [1.0], [2.0]], name="line3")


@pytest.fixture
def uniform2d(n_points):
    return generate_uniform(n_points, 2, seed=7)


@pytest.fixture
def uniform8d(n_points):
    return generate_uniform(n_points, 8, seed=11)


@pytest.fixture
def grid3x3():
    """3x3 integer grid, node 4 in the centre."""
    return Dataset([[x, y] for x in range(3) for y in range(3)], name="grid3x3")


@pytest.fixture
def rng():
    return np.random.default_rng(2026)
