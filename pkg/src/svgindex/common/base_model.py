# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Provides the frozen Pydantic base model shared by configuration objects."""

from pydantic import BaseModel, ConfigDict


class ConfigModel(BaseModel):
    """Immutable Pydantic model that allows dictionary-like read access."""

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    def __getitem__(self, key):
        """Get a value from the model."""
        try:
            return getattr(self, key)
        except AttributeError:
            raise KeyError(key) from None

    def get(self, key, default_value=None):
        """Get a value from the model, returning a default value if the key is not found."""
        return getattr(self, key, default_value)

    def replace(self, **changes):
        """Return a validated copy of the model with ``changes`` applied."""
        return self.model_validate({**self.model_dump(), **changes})
