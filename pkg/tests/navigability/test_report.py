# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

import pytest

from svgindex import (
    EvalMode,
    KernelSpec,
    NavigabilityReport,
    SearchParams,
    audit_svg,
    generate_uniform,
)
from svgindex.common import object_to_json


@pytest.fixture
def report(uniform2d):
    return audit_svg(
        uniform2d,
        KernelSpec(sigma=0.1),
        params=SearchParams(queue_length=1),
        modes=[EvalMode.all_pairs(), EvalMode.fixed_entry()],
        delaunay_check=True,
    )


def test_audit(report, uniform2d):
    assert report.n == uniform2d.n
    assert report.d == 2
    assert report.kernel == "euc,0.1"
    assert report.violations == []
    assert len(report.epsilon_general) == uniform2d.n
    assert all(eps >= 0 for eps in report.epsilon_general)
    assert report.epsilon == max(report.epsilon_general)
    assert [r.mode for r in report.recall] == ["all_pairs", "fixed_entry"]
    assert report.delaunay.holds
    assert report.degree.min >= 1


def test_epsilon_summary_and_histogram(report, uniform2d):
    summary = report.epsilon_summary()
    assert 0.0 <= summary.mean <= summary.p95 <= summary.max == report.epsilon
    bins = report.epsilon_histogram(20)
    assert len(bins) == 20
    assert sum(b.count for b in bins) == uniform2d.n
    assert all(b.lower < b.upper for b in bins)
    exponential = report.epsilon_summary("exponential")
    assert exponential.max >= 0.0
    with pytest.raises(ValueError, match="unknown slack kind"):
        report.epsilon_summary("other")


def test_summary_rows(report):
    rows = dict(report.summary_rows())
    assert rows["violations"] == "0"
    assert rows["kernel"] == "euc,0.1"
    assert rows["epsilon"] == repr(report.epsilon)
    assert "recall[all_pairs,L=1]" in rows
    assert "recall[fixed_entry,L=1]" in rows
    assert rows["delaunay_exceptions"] == "0"


def test_report_round_trips_through_json(report):
    assert NavigabilityReport.model_validate_json(object_to_json(report)) == report


def test_audit_without_extras(dot, uniform2d):
    report = audit_svg(uniform2d, dot)
    assert report.recall == []
    assert report.delaunay is None
    assert report.violations == []
    assert "delaunay_checked" not in dict(report.summary_rows())


def test_delaunay_check_needs_euclidean_similarity(dot, uniform2d):
    with pytest.raises(ValueError, match="euclidean_sq"):
        audit_svg(uniform2d, dot, delaunay_check=True)


@pytest.mark.slow
def test_audit_thousand_vectors():
    report = audit_svg(generate_uniform(1000, 8, seed=0), KernelSpec(sigma=1.0), jobs=4)
    assert all(eps >= 0 for eps in report.epsilon_general)
    assert report.violations == []
    assert len(report.epsilon_histogram(20)) == 20
