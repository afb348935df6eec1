# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

import csv
import json

import numpy as np
import pytest

from svgindex import (
    KernelSpec,
    build_svg,
    generate_uniform,
    load_dataset,
    load_graph,
    save_dataset,
)
from svgindex.cli import main
from svgindex.cli.config import (
    DatasetSource,
    ExperimentConfig,
    Method,
    parse_kernel,
    parse_mode,
    parse_pool,
    parse_search,
    parse_synthetic,
)
from svgindex.kernels import SimilarityKind


def _read_lines(path):
    return path.read_text(encoding="utf-8").splitlines()


def test_parsers():
    assert parse_kernel("euc,0.5") == KernelSpec(sigma=0.5)
    assert parse_kernel("dot,2").similarity == SimilarityKind.DOT_PRODUCT
    cityblock = parse_kernel("cityblock,1.0")
    assert cityblock.similarity == SimilarityKind.NEG_SQUARED_DISTANCE
    assert cityblock.distance == "cityblock"
    assert parse_synthetic("100,4,7") == (100, 4, 7)
    assert parse_pool("knn,2").ratio == 2.0
    assert parse_pool("knn,=12").size == 12
    assert parse_pool("current").label() == "current_graph"
    assert parse_search("greedy") == 1
    assert parse_search("beam,2") == 2
    assert parse_mode("random,4").label() == "random_entry,4"
    assert parse_mode("fixed").label() == "fixed_entry"
    with pytest.raises(ValueError, match="<similarity>,<sigma>"):
        parse_kernel("euc")
    with pytest.raises(ValueError, match="pool must be"):
        parse_pool("knn")
    with pytest.raises(ValueError, match="search must be"):
        parse_search("beam")


def test_experiment_validation():
    source = DatasetSource(synthetic=(10, 2, 0))
    assert ExperimentConfig(command="build", source=source).method == Method.SVG
    with pytest.raises(ValueError, match="--M"):
        ExperimentConfig(command="build", source=source, method=Method.SVG_L0)
    with pytest.raises(ValueError, match="full pool"):
        ExperimentConfig(command="build", source=source, pool=parse_pool("knn,2"))
    with pytest.raises(ValueError, match="exactly one"):
        DatasetSource()


def test_build_writes_graph_and_stats(tmp_path, capsys):
    output = tmp_path / "svg.graph"
    code = main(
        ["build", "--synthetic", "30,2,1", "--kernel", "euc,0.5", "--output", str(output)]
    )
    assert code == 0
    expected = build_svg(generate_uniform(30, 2, 1), KernelSpec(sigma=0.5))
    assert load_graph(output) == expected
    stats = json.loads((tmp_path / "svg.graph.stats.json").read_text(encoding="utf-8"))
    assert stats["method"] == "svg"
    assert stats["n"] == 30
    assert stats["kernel"] == "euc,0.5"
    assert stats["degree"]["edges"] == expected.num_edges
    assert "built svg over 30 vectors" in capsys.readouterr().out


def test_build_pruned_and_degree_bounded(tmp_path):
    output = tmp_path / "mrng.graph"
    stats = tmp_path / "stats.json"
    args = ["build", "--synthetic", "40,3,2", "--method", "mrng", "--M", "3"]
    args += ["--pool", "knn,2", "--output", str(output), "--stats", str(stats)]
    assert main(args) == 0
    assert load_graph(output).degree_stats().max <= 3
    assert json.loads(stats.read_text(encoding="utf-8"))["pool"] == "knn,2.0x"

    output = tmp_path / "l0.graph"
    args = ["build", "--synthetic", "40,3,2", "--method", "svg-l0", "--M", "4"]
    assert main([*args, "--output", str(output)]) == 0
    g = load_graph(output)
    assert g.has_weights
    assert g.degree_stats().max <= 4


def test_eval_appends_rows_under_one_header(tmp_path):
    output = tmp_path / "recall.csv"
    args = ["eval", "--synthetic", "25,2,3", "--mode", "all", "--mode", "fixed"]
    args += ["--output", str(output)]
    assert main(args) == 0
    assert main([*args, "--search", "beam,2"]) == 0
    lines = _read_lines(output)
    assert lines[0] == "method,d,n,sigma,M,L,mode,recall,mean_kernel_evals"
    assert len(lines) == 5
    assert lines[1].startswith("svg,2,25,1.0,0,1,all_pairs,")
    assert lines[4].startswith("svg,2,25,1.0,0,2,fixed_entry,")


def test_eval_loaded_graph_to_stdout(tmp_path, capsys):
    data = tmp_path / "data.csv"
    save_dataset(generate_uniform(20, 2, 5), data)
    graph = tmp_path / "g.graph"
    assert main(["build", "--input", str(data), "--output", str(graph)]) == 0
    capsys.readouterr()
    assert main(["eval", "--input", str(data), "--graph", str(graph)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("method,")
    assert len(lines) == 2
    assert lines[1].split(",")[6] == "all_pairs"


def test_audit_writes_report_files(tmp_path, capsys):
    prefix = tmp_path / "audit"
    args = ["audit", "--synthetic", "30,2,4", "--kernel", "euc,0.1", "--mode", "all"]
    args += ["--delaunay-check", "--output", str(prefix)]
    assert main(args) == 0
    assert "0 violations" in capsys.readouterr().out
    report = json.loads((tmp_path / "audit.json").read_text(encoding="utf-8"))
    assert report["violations"] == []
    assert report["delaunay"]["exceptions"] == []
    with (tmp_path / "audit.summary.csv").open(encoding="utf-8", newline="") as stream:
        summary = dict(list(csv.reader(stream))[1:])
    assert summary["violations"] == "0"
    assert "recall[all_pairs,L=1]" in summary
    histogram = _read_lines(tmp_path / "audit.epsilon.csv")
    assert histogram[0] == "lower,upper,count"
    assert len(histogram) == 21


def test_convert_round_trip(tmp_path):
    data = generate_uniform(10, 3, 0)
    source = save_dataset(data, tmp_path / "data.csv")
    assert main(["convert", str(source), str(tmp_path / "data.fvecs")]) == 0
    assert main(["convert", str(tmp_path / "data.fvecs"), str(tmp_path / "back.csv")]) == 0
    back = load_dataset(tmp_path / "back.csv")
    assert np.allclose(back.values, data.values, atol=1e-6)


def test_sweep_writes_csv(tmp_path):
    output = tmp_path / "degree.csv"
    args = ["sweep", "degree-vs-delaunay", "--seeds", "1", "--n", "12"]
    assert main([*args, "--output", str(output)]) == 0
    lines = _read_lines(output)
    assert lines[0] == "d,svg_degree_mean,svg_degree_std,delaunay_degree_mean,delaunay_degree_std"
    assert [line.split(",")[0] for line in lines[1:]] == ["2", "3", "4", "5", "6"]


def test_sweep_accepts_short_preset_names(tmp_path):
    output = tmp_path / "fig8.csv"
    assert main(["sweep", "fig8", "--seeds", "1", "--n", "20", "--output", str(output)]) == 0
    lines = _read_lines(output)
    assert lines[0].startswith("d,sigma_factor,L,recall_mean")
    # four dimensions, four widths, two queue lengths
    assert len(lines) == 1 + 4 * 4 * 2
    assert {line.split(",")[0] for line in lines[1:]} == {"2", "4", "8", "16"}


def test_failures_exit_with_one(tmp_path):
    missing = tmp_path / "missing.csv"
    assert main(["build", "--input", str(missing), "--output", str(tmp_path / "g")]) == 1
    assert main(["build", "--synthetic", "10,2,0", "--method", "svg-l0", "--output", "g"]) == 1
    assert main(["sweep", "no-such-preset"]) == 1
    assert main(["eval", "--synthetic", "10,2,0", "--graph", str(missing)]) == 1


def test_usage_errors_exit_with_two(tmp_path):
    output = str(tmp_path / "g")
    for args in (
        ["build", "--synthetic", "10,2,0", "--kernel", "euc", "--output", output],
        ["build", "--synthetic", "10,2", "--output", output],
        ["build", "--output", output],
        ["--jobs", "0", "convert", "a.csv", "b.csv"],
        [],
    ):
        with pytest.raises(SystemExit) as e:
            main(args)
        assert e.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
    assert capsys.readouterr().out.startswith("svg-index ")
