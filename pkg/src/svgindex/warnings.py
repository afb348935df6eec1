# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT

"""Module providing svg-index warnings."""


class NonNormalizedKernelWarning(Warning):
    """Warning for kernel-rule pruning with a kernel where K(x, x) != 1."""

    pass
