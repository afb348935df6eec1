# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the validated configuration of one command-line experiment."""

from __future__ import annotations

from enum import Enum
import logging
from pathlib import Path

from pydantic import Field, NonNegativeInt, PositiveInt, model_validator

from ..build import BuildConfig, CandidatePool, PoolKind, PruneRule, RuleKind
from ..common import ConfigModel
from ..data import Dataset, generate_uniform, load_dataset
from ..graph import DegreeStats
from ..kernels import KernelSpec, SimilarityKind
from ..navigability import EvalMode
from ..search import SearchParams
from ..solvers import DEFAULT_PURSUIT_ITERATIONS

log = logging.getLogger(__name__)

_SIMILARITY_NAMES = {
    "euc": SimilarityKind.EUCLIDEAN_SQ,
    "rbf": SimilarityKind.EUCLIDEAN_SQ,
    "dot": SimilarityKind.DOT_PRODUCT,
}


class Method(str, Enum):
    """Graph construction method."""

    SVG = "svg"
    SVG_L0 = "svg-l0"
    KERNEL_RULE = "kernel-rule"
    MRNG = "mrng"
    VAMANA = "vamana"
    SSG = "ssg"

    @property
    def rule(self) -> RuleKind | None:
        """Pruning rule of the method, ``None`` for the SVG methods."""
        return {
            Method.KERNEL_RULE: RuleKind.KERNEL,
            Method.MRNG: RuleKind.MRNG,
            Method.VAMANA: RuleKind.VAMANA,
            Method.SSG: RuleKind.SSG,
        }.get(self)


def parse_kernel(text: str) -> KernelSpec:
    """Parse ``<similarity>,<sigma>``.

    ``euc`` (or ``rbf``) and ``dot`` name the built-in similarities; any other name is
    taken as a :func:`scipy.spatial.distance.cdist` metric of ``neg_squared_distance``.
    """
    name, sep, sigma = text.partition(",")
    if not sep:
        raise ValueError(f"kernel must be <similarity>,<sigma>, got {text!r}")
    name = name.strip().lower()
    similarity = _SIMILARITY_NAMES.get(name, SimilarityKind.NEG_SQUARED_DISTANCE)
    distance = name if similarity == SimilarityKind.NEG_SQUARED_DISTANCE else None
    return KernelSpec(similarity=similarity, sigma=float(sigma), distance=distance)


def parse_synthetic(text: str) -> tuple[int, int, int]:
    """Parse ``<n>,<d>,<seed>``."""
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"synthetic data must be <n>,<d>,<seed>, got {text!r}")
    n, d, seed = (int(part) for part in parts)
    return n, d, seed


def parse_pool(text: str) -> CandidatePool:
    """Parse ``full``, ``current`` or ``knn,<r>`` (ratio) and ``knn,=<size>`` (explicit)."""
    kind, _, value = text.partition(",")
    kind = kind.strip().lower()
    if kind == "full":
        return CandidatePool.full()
    if kind in ("current", "current_graph"):
        return CandidatePool.current_graph()
    if kind == "knn" and value.startswith("="):
        return CandidatePool.knn(size=int(value[1:]))
    if kind == "knn" and value:
        return CandidatePool.knn(ratio=float(value))
    raise ValueError(f"pool must be full, current, knn,<r> or knn,=<size>, got {text!r}")


def parse_search(text: str) -> int:
    """Parse ``greedy`` or ``beam,<L>`` into a queue length."""
    kind, _, value = text.partition(",")
    kind = kind.strip().lower()
    if kind == "greedy" and not value:
        return 1
    if kind == "beam" and value:
        return int(value)
    raise ValueError(f"search must be greedy or beam,<L>, got {text!r}")


def parse_mode(text: str) -> EvalMode:
    """Parse ``all``, ``fixed`` or ``random,<seed>``."""
    kind, _, value = text.partition(",")
    kind = kind.strip().lower()
    if kind in ("all", "all_pairs") and not value:
        return EvalMode.all_pairs()
    if kind in ("fixed", "fixed_entry") and not value:
        return EvalMode.fixed_entry()
    if kind in ("random", "random_entry"):
        return EvalMode.random_entry(int(value) if value else 0)
    raise ValueError(f"mode must be all, fixed or random,<seed>, got {text!r}")


class DatasetSource(ConfigModel):
    """Where the experiment data comes from and which subset is used."""

    path: Path | None = None
    synthetic: tuple[PositiveInt, PositiveInt, int] | None = None
    head: PositiveInt | None = None
    sample: PositiveInt | None = None
    sample_seed: int = 0

    @model_validator(mode="after")
    def _check_source(self):
        if (self.path is None) == (self.synthetic is None):
            raise ValueError("give exactly one of an input file and synthetic data")
        if self.head is not None and self.sample is not None:
            raise ValueError("head and sample are mutually exclusive")
        return self

    def load(self) -> Dataset:
        """Load or generate the data and take the requested subset."""
        if self.path is not None:
            data = load_dataset(self.path)
        else:
            data = generate_uniform(*self.synthetic)
        if self.head is not None:
            data = data.head(self.head)
        elif self.sample is not None:
            data = data.sample(self.sample, self.sample_seed)
        return data


class ExperimentConfig(ConfigModel):
    """Validated settings of one ``build``, ``eval`` or ``audit`` invocation."""

    command: str
    source: DatasetSource
    kernel: KernelSpec = Field(default_factory=KernelSpec)
    method: Method = Method.SVG
    max_out_degree: NonNegativeInt = 0
    pool: CandidatePool = Field(default_factory=CandidatePool)
    lam: float = Field(default=1.2, ge=1.0)
    theta: float = Field(default=60.0, ge=0.0, le=60.0)
    pursuit_iterations: PositiveInt = DEFAULT_PURSUIT_ITERATIONS
    queue_length: PositiveInt = 1
    modes: list[EvalMode] = Field(default_factory=lambda: [EvalMode.all_pairs()])
    output: Path | None = None
    jobs: PositiveInt = 1

    @model_validator(mode="after")
    def _check_method(self):
        if self.method == Method.SVG_L0 and self.max_out_degree < 1:
            raise ValueError("svg-l0 needs --M of at least 1")
        if self.pool.kind == PoolKind.CURRENT_GRAPH and self.method != Method.SVG_L0:
            raise ValueError("the current pool is only available with svg-l0")
        if self.method == Method.SVG and self.pool.kind != PoolKind.FULL:
            raise ValueError("svg always uses the full pool")
        return self

    def build_config(self) -> BuildConfig:
        """Builder settings of the experiment."""
        return BuildConfig(
            kernel=self.kernel,
            max_out_degree=self.max_out_degree,
            pool=self.pool,
            pursuit_iterations=self.pursuit_iterations,
            jobs=self.jobs,
        )

    def prune_rule(self) -> PruneRule:
        """Pruning rule of a pruning method."""
        return PruneRule(kind=self.method.rule, lam=self.lam, theta=self.theta)

    def search_params(self) -> SearchParams:
        """Search settings of the experiment."""
        return SearchParams(queue_length=self.queue_length)


class BuildStats(ConfigModel):
    """Statistics written next to a built graph."""

    dataset: str
    n: NonNegativeInt
    d: NonNegativeInt
    method: Method
    kernel: str
    max_out_degree: NonNegativeInt
    pool: str
    degree: DegreeStats
    seconds: float
