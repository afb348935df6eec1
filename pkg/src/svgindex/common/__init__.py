# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Provides common functionality."""

from .base_model import ConfigModel
from .base_resource import Object
from .base_schema import BaseSchema
from .utils import default_jobs, map_in_order, object_to_json, write_json
