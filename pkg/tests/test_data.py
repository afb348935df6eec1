# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

import struct

import numpy as np
import pytest

from svgindex import (
    DataFormatError,
    Dataset,
    DimensionMismatchError,
    KernelSpec,
    SimilarityKind,
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


def _fvecs_bytes(*records):
    out = b""
    for record in records:
        out += struct.pack("<i", len(record)) + struct.pack(f"<{len(record)}f", *record)
    return out


def test_load_fvecs(tmp_path):
    path = tmp_path / "two.fvecs"
    path.write_bytes(_fvecs_bytes((1.0, 2.0), (3.0, 4.0)))
    data = load_fvecs(path)
    assert (data.n, data.d) == (2, 2)
    assert data.values.dtype == np.float64
    assert data.values.tolist() == [[1.0, 2.0], [3.0, 4.0]]
    assert data.name == "two"


def test_load_fvecs_errors(tmp_path):
    truncated = tmp_path / "truncated.fvecs"
    truncated.write_bytes(struct.pack("<i", 3) + struct.pack("<2f", 1.0, 2.0))
    with pytest.raises(DataFormatError) as e:
        load_fvecs(truncated)
    assert e.value.reason == "truncated-record"

    empty = tmp_path / "empty.fvecs"
    empty.write_bytes(b"")
    with pytest.raises(DataFormatError) as e:
        load_fvecs(empty)
    assert e.value.reason == "empty-file"

    mixed = tmp_path / "mixed.fvecs"
    mixed.write_bytes(_fvecs_bytes((1.0, 2.0), (3.0, 4.0, 5.0)))
    with pytest.raises(DataFormatError) as e:
        load_fvecs(mixed)
    assert e.value.reason == "inconsistent-dimension"

    odd = tmp_path / "odd.fvecs"
    odd.write_bytes(_fvecs_bytes((1.0, 2.0), (3.0, 4.0)) + b"\x00")
    with pytest.raises(DataFormatError):
        load_fvecs(odd)


def test_save_fvecs_layout(tmp_path):
    data = Dataset([[0.5, -1.0], [2.0, 0.25]])
    path = save_fvecs(data, tmp_path / "out.fvecs")
    assert path.read_bytes() == _fvecs_bytes((0.5, -1.0), (2.0, 0.25))
    assert load_fvecs(path) == data


def test_load_csv(tmp_path):
    path = tmp_path / "small.csv"
    path.write_text("1,2\n3,4\n", encoding="utf-8")
    data = load_csv(path)
    assert (data.n, data.d) == (2, 2)
    assert data.values.tolist() == [[1.0, 2.0], [3.0, 4.0]]


def test_load_csv_errors(tmp_path):
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("1,2\n3", encoding="utf-8")
    with pytest.raises(DataFormatError) as e:
        load_csv(ragged)
    assert e.value.reason == "ragged-row"

    text = tmp_path / "text.csv"
    text.write_text("1,2\n3,x\n", encoding="utf-8")
    with pytest.raises(DataFormatError) as e:
        load_csv(text)
    assert e.value.reason == "non-numeric"

    one_row = tmp_path / "one.csv"
    one_row.write_text("1,2\n", encoding="utf-8")
    with pytest.raises(DataFormatError) as e:
        load_csv(one_row)
    assert e.value.reason == "too-small"


def test_csv_round_trip_is_exact(tmp_path, rng):
    data = Dataset(rng.normal(size=(5, 3)))
    path = save_csv(data, tmp_path / "round.csv")
    assert load_csv(path) == data
    assert "\r" not in path.read_text(encoding="utf-8")


def test_dispatch_on_suffix(tmp_path):
    data = Dataset([[1.0, 2.0], [3.0, 4.0]])
    for name in ("data.csv", "data.fvecs"):
        assert load_dataset(save_dataset(data, tmp_path / name)) == data
    with pytest.raises(DataFormatError):
        save_dataset(data, tmp_path / "data.npy")
    with pytest.raises(DataFormatError):
        load_dataset(tmp_path / "data.npy")


def test_dataset_validation():
    with pytest.raises(DataFormatError):
        Dataset([[1.0, np.nan], [0.0, 0.0]])
    with pytest.raises(DataFormatError):
        Dataset([[1.0, np.inf], [0.0, 0.0]])
    with pytest.raises(DataFormatError):
        Dataset([[1.0]])
    with pytest.raises(DataFormatError):
        Dataset([1.0, 2.0])
    data = Dataset([[1.0], [2.0]])
    with pytest.raises(ValueError, match="read-only"):
        data.values[0, 0] = 5.0


def test_head_and_sample():
    data = generate_uniform(20, 3, seed=1)
    head = data.head(5)
    assert head.n == 5
    assert np.array_equal(head.values, data.values[:5])
    sample = data.sample(6, seed=4)
    assert sample == data.sample(6, seed=4)
    assert sample.n == 6
    rows = {tuple(row) for row in data.values}
    assert all(tuple(row) in rows for row in sample.values)
    with pytest.raises(ValueError, match="head size must be in"):
        data.head(1)
    with pytest.raises(ValueError, match="sample size must be in"):
        data.sample(21, seed=0)


def test_generate_uniform():
    a = generate_uniform(100, 8, seed=7)
    b = generate_uniform(100, 8, seed=7)
    assert a == b
    pair = generate_uniform(2, 1, seed=0)
    assert pair.values.shape == (2, 1)
    assert np.all((pair.values >= 0) & (pair.values < 1))
    large = generate_uniform(100_000, 1, seed=3)
    assert 0.49 <= large.values.mean() <= 0.51
    with pytest.raises(ValueError, match="need n >= 2"):
        generate_uniform(1, 2, seed=0)


def test_brute_force_top1(rbf, dot):
    data = generate_uniform(30, 3, seed=5)
    assert brute_force_top1(rbf, data, data[5]).target == 5

    pair = Dataset([[1.0, 0.0], [2.0, 0.0]])
    assert brute_force_top1(dot, pair, [1.0, 0.0]).target == 1

    with pytest.raises(DimensionMismatchError):
        brute_force_top1(rbf, data, [0.0, 0.0])


def test_brute_force_ties(rbf):
    data = Dataset([[1.0], [-1.0], [3.0]])
    top = brute_force_top1(rbf, data, [0.0])
    assert top.target == 0
    assert top.ties == (0, 1)
    assert 1 in top


def test_brute_force_matches_naive_scan(rbf, rng):
    data = Dataset(rng.normal(size=(50, 4)))
    for query in rng.normal(size=(20, 4)):
        best, best_id = -np.inf, -1
        for j in range(data.n):
            value = -sum((data[j][c] - query[c]) ** 2 for c in range(4))
            if value > best:
                best, best_id = value, j
        assert brute_force_top1(rbf, data, query).target == best_id


def test_top1_invariant_under_permutation(rbf, rng):
    data = Dataset(rng.normal(size=(25, 3)))
    permutation = rng.permutation(25)
    permuted = data.permuted(permutation)
    query = rng.normal(size=3)
    original = brute_force_top1(rbf, data, query).target
    assert permutation[brute_force_top1(rbf, permuted, query).target] == original


def test_ground_truth(rbf, dot):
    data = generate_uniform(15, 2, seed=9)
    truths = ground_truth(rbf, data)
    assert [t.target for t in truths] == list(range(15))
    mip = Dataset([[1.0, 0.0], [2.0, 0.0], [0.0, 1.0]])
    assert [t.target for t in ground_truth(dot, mip)] == [1, 1, 2]
    manhattan = KernelSpec(similarity=SimilarityKind.NEG_SQUARED_DISTANCE, distance="cityblock")
    assert [t.target for t in ground_truth(manhattan, data)] == list(range(15))
