# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""A shared utility module."""

from concurrent.futures import ThreadPoolExecutor
import logging
import os
from pathlib import Path

from pydantic import BaseModel

log = logging.getLogger(__name__)

JOBS_ENV_VAR = "SVG_JOBS"


def object_to_json(object: BaseModel, indent: int | None = 2) -> str:
    """Convert a Pydantic object to a JSON string."""
    return object.model_dump_json(indent=indent)


def write_json(object: BaseModel, path: str | Path) -> Path:
    """Write a Pydantic object to a JSON file and return its path."""
    path = Path(path)
    path.write_text(object_to_json(object) + "\n", encoding="utf-8")
    log.debug(f"Wrote {type(object).__name__} to {path}")
    return path


def default_jobs() -> int:
    """Get the default worker count from the ``SVG_JOBS`` environment variable."""
    value = os.environ.get(JOBS_ENV_VAR)
    if not value:
        return 1
    try:
        jobs = int(value)
    except ValueError:
        log.warning(f"Ignoring {JOBS_ENV_VAR}={value!r}: not an integer")
        return 1
    if jobs < 1:
        log.warning(f"Ignoring {JOBS_ENV_VAR}={value!r}: must be at least 1")
        return 1
    return jobs


def map_in_order(fn, items, jobs: int = 1) -> list:
    """Apply ``fn`` to every item, on ``jobs`` worker threads, keeping the input order."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(fn, items))
