"""Desk-scale limits shared by the brute-force routines."""

from __future__ import annotations

import os

DEFAULT_MAX_D = 16
SEPARATION_SUM_CAP = 4096


def max_d() -> int:
    """Vertex/variable bound for exhaustive searches; ``CONIC_FORGE_MAX_D`` overrides."""
    raw = os.environ.get("CONIC_FORGE_MAX_D")
    if raw is None:
        return DEFAULT_MAX_D
    value = int(raw)
    if value <= 0:
        raise ValueError("CONIC_FORGE_MAX_D must be positive")
    return value
