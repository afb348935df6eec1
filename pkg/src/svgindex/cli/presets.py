# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the sweep preset schema and resource."""

from importlib import resources
import json
import logging
from pathlib import Path

from marshmallow import fields, missing, validate

from ..common import BaseSchema, Object

log = logging.getLogger(__name__)

RECIPES = ("degree", "sigma_recall", "method_recall", "sigma_l0")
MODES = ("all_pairs", "fixed_entry", "random_entry")

# short names accepted by load_preset
PRESET_ALIASES = {
    "fig6": "degree-vs-delaunay",
    "fig8": "sigma-recall",
    "fig9": "bounded-degree-recall",
    "fig11": "l0-sigma-recall",
}


class SweepPresetSchema(BaseSchema):
    class Meta(BaseSchema.Meta):
        pass

    name = fields.String(required=True, metadata={"description": "Preset name."})
    description = fields.String(metadata={"description": "What the sweep reproduces."})
    recipe = fields.String(
        required=True,
        validate=validate.OneOf(RECIPES),
        metadata={"description": "Experiment run in every cell."},
    )
    n = fields.Int(
        required=True, validate=validate.Range(min=2), metadata={"description": "Vectors per set."}
    )
    seeds = fields.Int(
        required=True,
        validate=validate.Range(min=1),
        metadata={"description": "Number of seeded realizations per cell."},
    )
    dims = fields.List(
        fields.Int(validate=validate.Range(min=1)),
        required=True,
        metadata={"description": "Dimensions of the uniform data."},
    )
    sigma = fields.Float(
        allow_none=True, metadata={"description": "Fixed kernel width of the degree recipe."}
    )
    sigma_factors = fields.List(
        fields.Float(validate=validate.Range(min=0, min_inclusive=False)),
        allow_none=True,
        metadata={"description": "Kernel widths as multiples of the median pairwise distance."},
    )
    queue_lengths = fields.List(
        fields.Int(validate=validate.Range(min=1)),
        load_default=[1],
        metadata={"description": "Search queue lengths evaluated per cell."},
    )
    max_out_degree = fields.Dict(
        keys=fields.String(),
        values=fields.Int(validate=validate.Range(min=1)),
        allow_none=True,
        metadata={"description": "Out-degree bound per dimension."},
    )
    pool_ratio = fields.Float(
        allow_none=True,
        validate=validate.Range(min=1),
        metadata={"description": "Truncation ratio of the truncated MRNG baseline."},
    )
    mode = fields.String(
        load_default="all_pairs",
        validate=validate.OneOf(MODES),
        metadata={"description": "Entry point policy of the recall evaluations."},
    )


class SweepPreset(Object):
    """Provides a parameter sweep preset.

    Parameters
    ----------
    name : str
        Preset name.
    description : str, optional
        What the sweep reproduces.
    recipe : str
        One of ``degree``, ``sigma_recall``, ``method_recall`` and ``sigma_l0``.
    n : int
        Vectors per uniform set.
    seeds : int
        Seeded realizations per cell.
    dims : list[int]
        Dimensions of the uniform data.
    sigma : float, optional
        Fixed kernel width (``degree`` recipe).
    sigma_factors : list[float], optional
        Kernel widths relative to the median pairwise distance of each set.
    queue_lengths : list[int], optional
        Search queue lengths.
    max_out_degree : dict[str, int], optional
        Out-degree bound per dimension, keyed by the dimension as a string.
    pool_ratio : float, optional
        Truncation ratio of the truncated MRNG baseline.
    mode : str, optional
        Entry point policy of the recall evaluations.

    """

    class Meta:
        schema = SweepPresetSchema

    def __init__(
        self,
        name: str = missing,
        description: str = missing,
        recipe: str = missing,
        n: int = missing,
        seeds: int = missing,
        dims: list[int] = missing,
        sigma: float = missing,
        sigma_factors: list[float] = missing,
        queue_lengths: list[int] = missing,
        max_out_degree: dict[str, int] = missing,
        pool_ratio: float = missing,
        mode: str = missing,
        **kwargs,
    ):
        self.name = name
        self.description = description
        self.recipe = recipe
        self.n = n
        self.seeds = seeds
        self.dims = dims
        self.sigma = sigma
        self.sigma_factors = sigma_factors
        self.queue_lengths = queue_lengths
        self.max_out_degree = max_out_degree
        self.pool_ratio = pool_ratio
        self.mode = mode

    def degree_for(self, d: int) -> int:
        """Out-degree bound of dimension ``d``."""
        try:
            return self.max_out_degree[str(d)]
        except (KeyError, TypeError):
            raise ValueError(f"preset {self.name} has no out-degree bound for d={d}") from None

    def replace(self, **changes) -> "SweepPreset":
        """Return a validated copy with ``changes`` applied."""
        schema = SweepPresetSchema()
        return schema.load({**schema.dump(self), **changes})


SweepPresetSchema.Meta.object_class = SweepPreset


def preset_names() -> list[str]:
    """Names of the presets shipped with the package."""
    folder = resources.files(__package__) / "presets"
    return sorted(
        Path(entry.name).stem for entry in folder.iterdir() if entry.name.endswith(".json")
    )


def load_preset(name_or_path: str | Path) -> SweepPreset:
    """Load a shipped preset by name or alias, or a preset file by path."""
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        text = path.read_text(encoding="utf-8")
    else:
        name = PRESET_ALIASES.get(str(name_or_path), str(name_or_path))
        resource = resources.files(__package__) / "presets" / f"{name}.json"
        if not resource.is_file():
            known = ", ".join([*preset_names(), *PRESET_ALIASES])
            raise ValueError(f"unknown preset {name!r}, expected one of {known}")
        text = resource.read_text(encoding="utf-8")
    preset = SweepPresetSchema().load(json.loads(text))
    log.debug(f"Loaded preset {preset.name}")
    return preset
