# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from svgindex import (
    DimensionMismatchError,
    EmptySupportError,
    KernelSpec,
    generate_uniform,
    solve_svg,
)
from svgindex.solvers import SparseCoefficients, decision_function


@pytest.mark.parametrize(
    "spec",
    [
        KernelSpec(sigma=0.1),
        KernelSpec(sigma=0.2),
    ],
)
def test_margin_invariants(spec):
    data = generate_uniform(50, 2, seed=21)
    for coeffs in solve_svg(data, spec):
        if coeffs.support_size == 0:
            continue
        i = coeffs.anchor
        support = set(coeffs.indices.tolist())
        assert decision_function(spec, data, coeffs, data[i]) == pytest.approx(1.0, abs=1e-9)
        for j in range(data.n):
            if j == i:
                continue
            value = decision_function(spec, data, coeffs, data[j])
            if j in support:
                assert value == pytest.approx(-1.0, abs=1e-6)
            else:
                assert value < -1.0 + 1e-6


def test_empty_support(rbf):
    data = generate_uniform(5, 2, seed=0)
    with pytest.raises(EmptySupportError) as e:
        decision_function(rbf, data, SparseCoefficients.from_entries(0, []), data[0])
    assert e.value.node == 0


def test_dimension_mismatch(rbf):
    data = generate_uniform(5, 2, seed=0)
    coeffs = SparseCoefficients.from_entries(0, [(1, 0.5)])
    with pytest.raises(DimensionMismatchError):
        decision_function(rbf, data, coeffs, np.zeros(3))
