# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

import json

from marshmallow import ValidationError
import numpy as np
import pytest

from svgindex import Dataset, KernelSpec, build_svg, generate_uniform
from svgindex.cli.presets import PRESET_ALIASES, SweepPresetSchema, load_preset, preset_names
from svgindex.cli.sweep import median_distance, run_sweep


def _cells(table):
    return {tuple(row[: len(table.keys)]): row[len(table.keys) :] for row in table.rows}


def test_shipped_presets():
    assert preset_names() == [
        "bounded-degree-recall",
        "degree-vs-delaunay",
        "l0-sigma-recall",
        "sigma-recall",
    ]
    narrowing = load_preset("sigma-recall")
    assert narrowing.recipe == "sigma_recall"
    assert narrowing.queue_lengths == [1, 2]
    assert narrowing.sigma_factors[0] == 1.0
    assert narrowing.sigma_factors[-1] == pytest.approx(0.01)
    bounded = load_preset("bounded-degree-recall")
    assert bounded.degree_for(16) == 16
    with pytest.raises(ValueError, match="no out-degree bound for d=3"):
        bounded.degree_for(3)
    with pytest.raises(ValueError, match="unknown preset 'no-such-preset'"):
        load_preset("no-such-preset")
    for alias, name in PRESET_ALIASES.items():
        assert load_preset(alias).name == name


def test_preset_from_file(tmp_path):
    path = tmp_path / "custom.json"
    recipe = {"name": "custom", "recipe": "degree", "n": 10, "seeds": 1, "dims": [2], "sigma": 0.5}
    path.write_text(json.dumps(recipe), encoding="utf-8")
    preset = load_preset(path)
    assert preset.name == "custom"
    assert preset.mode == "all_pairs"
    assert preset.queue_lengths == [1]


def test_invalid_presets_are_rejected():
    with pytest.raises(ValidationError):
        SweepPresetSchema().load(
            {"name": "bad", "recipe": "bogus", "n": 10, "seeds": 1, "dims": [2]}
        )
    with pytest.raises(ValidationError):
        SweepPresetSchema().load(
            {"name": "bad", "recipe": "degree", "n": 10, "seeds": 1, "dims": [2], "extra": 1}
        )
    with pytest.raises(ValidationError):
        load_preset("degree-vs-delaunay").replace(seeds=0)


def test_median_distance():
    assert median_distance(Dataset([[0.0], [1.0], [3.0]])) == 2.0


def test_degree_sweep_matches_direct_builds():
    preset = load_preset("degree-vs-delaunay").replace(n=15, seeds=2, dims=[2, 3])
    table = run_sweep(preset)
    assert table.columns == [
        "d",
        "svg_degree_mean",
        "svg_degree_std",
        "delaunay_degree_mean",
        "delaunay_degree_std",
    ]
    cells = _cells(table)
    assert sorted(cells) == [(2,), (3,)]
    for d in (2, 3):
        degrees = [
            build_svg(generate_uniform(15, d, seed), KernelSpec(sigma=1.0)).degree_stats().mean
            for seed in range(2)
        ]
        assert cells[(d,)][0] == pytest.approx(np.mean(degrees))
        assert cells[(d,)][1] == pytest.approx(np.std(degrees))


def test_sigma_recall_sweep():
    preset = load_preset("sigma-recall").replace(n=20, seeds=2, dims=[2])
    table = run_sweep(preset)
    assert table.keys == ("d", "sigma_factor", "L")
    assert len(table.rows) == 8
    for row in table.rows:
        recall_mean, recall_std = row[3], row[4]
        assert 0.0 <= recall_mean <= 1.0
        assert recall_std >= 0.0
        assert row[5] >= 1.0
    cells = _cells(table)
    for d, factor, _ in cells:
        # a queue of two never ends below the greedy terminal
        assert cells[(d, factor, 2)][0] >= cells[(d, factor, 1)][0]


def test_method_recall_sweep():
    preset = load_preset("bounded-degree-recall").replace(n=20, seeds=1, dims=[2, 4])
    table = run_sweep(preset)
    assert len(table.rows) == 12
    methods = {row[1] for row in table.rows}
    assert methods == {"svg-l0", "mrng-full-M", "mrng-truncated"}
    cells = _cells(table)
    for method in methods:
        # mean_degree respects the per-dimension bound
        assert cells[(2, method, 1)][4] <= 4
        assert cells[(4, method, 1)][4] <= 6


def test_sweep_output_is_deterministic():
    preset = load_preset("l0-sigma-recall").replace(n=20, seeds=2, dims=[2])
    serial = run_sweep(preset).to_csv()
    assert serial == run_sweep(preset).to_csv()
    assert serial == run_sweep(preset, jobs=2).to_csv()
    lines = serial.splitlines()
    assert lines[0].startswith("d,sigma_factor,L,recall_mean,recall_std")
    assert len(lines) == 5


def test_table_save(tmp_path):
    table = run_sweep(load_preset("degree-vs-delaunay").replace(n=10, seeds=1, dims=[2]))
    path = table.save(tmp_path / "degree.csv")
    assert path.read_text(encoding="utf-8") == table.to_csv()


@pytest.mark.slow
def test_narrow_kernels_recover_recall(sweep_seeds):
    preset = load_preset("sigma-recall").replace(seeds=sweep_seeds, dims=[2])
    cells = _cells(run_sweep(preset, jobs=4))
    narrowest = min(factor for _, factor, _ in cells)
    assert cells[(2, narrowest, 1)][0] >= 0.95
    assert cells[(2, narrowest, 2)][0] >= 0.95
    for d, factor, _ in cells:
        assert cells[(d, factor, 2)][0] >= cells[(d, factor, 1)][0]


@pytest.mark.slow
def test_svg_is_sparser_than_delaunay(sweep_seeds):
    preset = load_preset("degree-vs-delaunay").replace(seeds=sweep_seeds)
    cells = _cells(run_sweep(preset, jobs=4))
    delaunay = [cells[(d,)][2] for d in preset.dims]
    assert delaunay == sorted(delaunay)
    assert cells[(6,)][0] < cells[(6,)][2]
