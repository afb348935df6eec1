# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing the base class for all svg-index errors."""


class SvgError(Exception):
    """Provides the base class for all svg-index errors.

    Example:
    -------
        >>> from svgindex import SvgError, load_fvecs
        >>> try:
        >>>     data = load_fvecs("empty.fvecs")
        >>> except SvgError as e:
        >>>     print(e, e.reason)
        empty.fvecs: file is empty empty-file

    """

    def __init__(self, *args, **kwargs):
        """Initialize the SvgError object."""
        self.reason = kwargs.pop("reason", None)
        self.description = kwargs.pop("description", None)
        super().__init__(*args, **kwargs)


class DataFormatError(SvgError):
    """Provides errors raised while reading or validating datasets."""

    def __init__(self, *args, **kwargs):
        """Initialize the DataFormatError object."""
        super().__init__(*args, **kwargs)


class DimensionMismatchError(SvgError, ValueError):
    """Provides errors for vectors of unequal dimension."""

    def __init__(self, *args, **kwargs):
        """Initialize the DimensionMismatchError object."""
        super().__init__(*args, **kwargs)


class GraphError(SvgError):
    """Provides graph container and graph file errors."""

    def __init__(self, *args, **kwargs):
        """Initialize the GraphError object."""
        super().__init__(*args, **kwargs)


class SolverError(SvgError):
    """Provides errors raised by the numerical solvers."""

    def __init__(self, *args, **kwargs):
        """Initialize the SolverError object."""
        self.node = kwargs.pop("node", None)
        super().__init__(*args, **kwargs)


class NonConvergenceError(SolverError):
    """Provides the error raised when the active-set iteration cap is exceeded.

    The best iterate found before giving up is available as ``best_iterate``.
    """

    def __init__(self, *args, **kwargs):
        """Initialize the NonConvergenceError object."""
        self.best_iterate = kwargs.pop("best_iterate", None)
        super().__init__(*args, **kwargs)


class EmptySupportError(SolverError):
    """Provides the error raised when a decision function has no support vectors."""

    def __init__(self, *args, **kwargs):
        """Initialize the EmptySupportError object."""
        super().__init__(*args, **kwargs)


class LinearProgramError(SvgError):
    """Provides errors raised by the Delaunay linear program."""

    def __init__(self, *args, **kwargs):
        """Initialize the LinearProgramError object."""
        self.pair = kwargs.pop("pair", None)
        super().__init__(*args, **kwargs)
