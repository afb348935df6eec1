# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Command-line interface of svg-index."""

from .config import (
    BuildStats,
    DatasetSource,
    ExperimentConfig,
    Method,
    parse_kernel,
    parse_mode,
    parse_pool,
    parse_search,
    parse_synthetic,
)
from .main import build_graph, build_parser, main
from .presets import SweepPreset, SweepPresetSchema, load_preset, preset_names
from .sweep import SweepTable, median_distance, run_sweep
