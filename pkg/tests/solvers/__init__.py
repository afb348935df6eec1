# Copyright (C) 2026 svg-index developers
# SPDX-License-Identifier: MIT
