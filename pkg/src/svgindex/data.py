# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing datasets, file formats, and brute-force ground truth."""

from __future__ import annotations

import csv
from dataclasses import dataclass
import logging
from pathlib import Path

import numpy as np

from .exceptions import DataFormatError, DimensionMismatchError
from .kernels import KernelSpec, pairwise_similarity

log = logging.getLogger(__name__)


class Dataset:
    """Immutable matrix of ``n`` row vectors of dimension ``d``.

    Row ``i`` is node ``i`` of every graph built over the dataset. Values are stored as
    64-bit reals whatever the input precision.

    Parameters
    ----------
    values : array-like
        Matrix of shape ``(n, d)`` with ``n >= 2`` and ``d >= 1``, all entries finite.
    name : str, optional
        Label used in logs and CSV output.

    """

    def __init__(self, values, name: str = "data"):
        """Initialize the Dataset object."""
        try:
            array = np.array(values, dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise DataFormatError(f"{name}: not a numeric matrix: {e}", reason="non-numeric") from e
        if array.ndim != 2:
            raise DataFormatError(
                f"{name}: expected a 2-D matrix, got shape {array.shape}", reason="shape"
            )
        if array.shape[0] < 2 or array.shape[1] < 1:
            raise DataFormatError(
                f"{name}: need at least 2 vectors of dimension >= 1, got shape {array.shape}",
                reason="too-small",
            )
        if not np.all(np.isfinite(array)):
            bad = int(np.argwhere(~np.isfinite(array))[0, 0])
            raise DataFormatError(f"{name}: row {bad} has NaN or Inf entries", reason="non-finite")
        array.flags.writeable = False
        self._values = array
        self.name = name

    @property
    def values(self) -> np.ndarray:
        """Read-only ``(n, d)`` matrix."""
        return self._values

    @property
    def n(self) -> int:
        """Number of vectors."""
        return self._values.shape[0]

    @property
    def d(self) -> int:
        """Dimension."""
        return self._values.shape[1]

    def __len__(self) -> int:
        """Return the number of vectors."""
        return self.n

    def __getitem__(self, i) -> np.ndarray:
        """Return row ``i``."""
        return self._values[i]

    def __repr__(self) -> str:
        """Printable representation of the dataset."""
        return f"Dataset(name={self.name!r}, n={self.n}, d={self.d})"

    def __eq__(self, other) -> bool:
        """Compare values bitwise."""
        if not isinstance(other, Dataset):
            return NotImplemented
        return self._values.shape == other._values.shape and np.array_equal(
            self._values, other._values
        )

    __hash__ = object.__hash__

    def head(self, k: int) -> Dataset:
        """Return the first ``k`` vectors."""
        if not 2 <= k <= self.n:
            raise ValueError(f"head size must be in [2, {self.n}], got {k}")
        return Dataset(self._values[:k], name=f"{self.name}[:{k}]")

    def sample(self, k: int, seed: int) -> Dataset:
        """Return ``k`` vectors drawn without replacement, kept in dataset order."""
        if not 2 <= k <= self.n:
            raise ValueError(f"sample size must be in [2, {self.n}], got {k}")
        rng = np.random.default_rng(seed)
        rows = np.sort(rng.choice(self.n, size=k, replace=False))
        return Dataset(self._values[rows], name=f"{self.name}~{k}@{seed}")

    def permuted(self, permutation) -> Dataset:
        """Return the dataset with row ``permutation[i]`` moved to position ``i``."""
        permutation = np.asarray(permutation, dtype=np.int64)
        if sorted(permutation.tolist()) != list(range(self.n)):
            raise ValueError("not a permutation of the row ids")
        return Dataset(self._values[permutation], name=self.name)


def generate_uniform(n: int, d: int, seed: int) -> Dataset:
    """Generate ``n`` i.i.d. uniform vectors on ``[0, 1)**d``."""
    if n < 2 or d < 1:
        raise ValueError(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    return Dataset(rng.random((n, d)), name=f"uniform-{n}x{d}-s{seed}")


################################################################
# fvecs


def load_fvecs(path: str | Path) -> Dataset:
    """Load a dataset in the fvecs format.

    Each record is a little-endian 32-bit dimension count followed by that many
    little-endian 32-bit floats. Values are widened to 64-bit.
    """
    path = Path(path)
    raw = path.read_bytes()
    if not raw:
        raise DataFormatError(f"{path}: file is empty", reason="empty-file")
    if len(raw) % 4:
        raise DataFormatError(
            f"{path}: size {len(raw)} is not a multiple of 4 bytes", reason="truncated-record"
        )
    words = np.frombuffer(raw, dtype="<i4")
    d = int(words[0])
    if d <= 0:
        raise DataFormatError(f"{path}: record 0 has dimension {d}", reason="bad-dimension")
    position, record = 0, 0
    while position < words.size:
        dim = int(words[position])
        if dim != d:
            raise DataFormatError(
                f"{path}: record {record} has dimension {dim}, expected {d}",
                reason="inconsistent-dimension",
            )
        if position + 1 + dim > words.size:
            raise DataFormatError(
                f"{path}: record {record} claims {dim} values but only "
                f"{words.size - position - 1} remain",
                reason="truncated-record",
            )
        position += 1 + dim
        record += 1
    floats = np.frombuffer(raw, dtype="<f4").reshape(-1, d + 1)[:, 1:]
    log.debug(f"Loaded {record} vectors of dimension {d} from {path}")
    return Dataset(floats.astype(np.float64), name=path.stem)


def save_fvecs(data: Dataset, path: str | Path) -> Path:
    """Save a dataset in the fvecs format (values narrowed to 32-bit floats)."""
    path = Path(path)
    records = np.empty((data.n, data.d + 1), dtype="<f4")
    records[:, 1:] = data.values.astype("<f4")
    records.view("<i4")[:, 0] = data.d
    path.write_bytes(records.tobytes())
    return path


################################################################
# CSV


def load_csv(path: str | Path) -> Dataset:
    """Load a dataset from comma-separated decimal rows."""
    path = Path(path)
    rows = []
    with path.open(newline="", encoding="utf-8") as f:
        for line_number, fields in enumerate(csv.reader(f), start=1):
            if not fields or all(not field.strip() for field in fields):
                continue
            try:
                row = [float(field) for field in fields]
            except ValueError as e:
                raise DataFormatError(
                    f"{path}:{line_number}: non-numeric field: {e}", reason="non-numeric"
                ) from e
            if rows and len(row) != len(rows[0]):
                raise DataFormatError(
                    f"{path}:{line_number}: row has {len(row)} fields, expected {len(rows[0])}",
                    reason="ragged-row",
                )
            rows.append(row)
    if not rows:
        raise DataFormatError(f"{path}: file is empty", reason="empty-file")
    return Dataset(rows, name=path.stem)


def save_csv(data: Dataset, path: str | Path) -> Path:
    """Save a dataset as CSV, 17 significant digits per value."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        for row in data.values:
            writer.writerow([f"{value:.17g}" for value in row])
    return path


def load_dataset(path: str | Path) -> Dataset:
    """Load a dataset, choosing the format from the file suffix."""
    path = Path(path)
    if path.suffix == ".fvecs":
        return load_fvecs(path)
    if path.suffix == ".csv":
        return load_csv(path)
    raise DataFormatError(f"{path}: unknown dataset format {path.suffix!r}", reason="format")


def save_dataset(data: Dataset, path: str | Path) -> Path:
    """Save a dataset, choosing the format from the file suffix."""
    path = Path(path)
    if path.suffix == ".fvecs":
        return save_fvecs(data, path)
    if path.suffix == ".csv":
        return save_csv(data, path)
    raise DataFormatError(f"{path}: unknown dataset format {path.suffix!r}", reason="format")


################################################################
# Ground truth


@dataclass(frozen=True)
class TopOne:
    """Brute-force top-1 answer: canonical target and the full set of maximizers."""

    target: int
    ties: tuple[int, ...]

    def __contains__(self, node: int) -> bool:
        """Check whether ``node`` is one of the maximizers."""
        return node in self.ties


def _top_one(similarities: np.ndarray) -> TopOne:
    best = similarities.max()
    ties = tuple(int(i) for i in np.flatnonzero(similarities == best))
    return TopOne(target=ties[0], ties=ties)


def brute_force_top1(spec: KernelSpec, data: Dataset, query) -> TopOne:
    """Find ``argmax_j K(x_j, query)`` by a linear scan.

    The scan compares similarities, which order the same way as the kernel and its
    logarithm. Ties keep every maximizer; the smallest id is canonical.
    """
    query = np.asarray(query, dtype=np.float64).ravel()
    if query.size != data.d:
        raise DimensionMismatchError(
            f"query dimension {query.size} != data dimension {data.d}",
            reason="dimension-mismatch",
        )
    return _top_one(pairwise_similarity(spec, data.values, query)[:, 0])


def ground_truth(spec: KernelSpec, data: Dataset, similarity_matrix=None) -> list[TopOne]:
    """Compute the top-1 answer for every indexed vector used as the query."""
    if similarity_matrix is None:
        similarity_matrix = pairwise_similarity(spec, data.values, data.values)
    return [_top_one(similarity_matrix[:, k]) for k in range(data.n)]
