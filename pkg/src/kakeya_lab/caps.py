"""Desk-scale budget caps, overridable through the environment.

``KAKEYA_LAB_CAP_K`` overrides the fractal-depth caps (stage squares,
window geometry, coefficient searches); ``KAKEYA_LAB_CAP_J`` overrides
the Kakeya stage cap.  Caps are read at call time so tests can adjust
them per run.
"""

from __future__ import annotations

import os

# Stage square generation: 4^8 = 65536 squares.
DEFAULT_STAGE_CAP = 8
# Window geometry / area tables and coefficient searches: 4^4 squares,
# up to 2 convex parts each per window.
DEFAULT_WINDOW_CAP = 4
# Sprouting depth for standalone tree construction.
DEFAULT_SPROUT_CAP = 6
# Kakeya stage depth: stage 2 already holds 2048 triangles.
DEFAULT_KAKEYA_CAP = 2


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def stage_cap() -> int:
    return _env_int("KAKEYA_LAB_CAP_K", DEFAULT_STAGE_CAP)


def window_cap() -> int:
    return _env_int("KAKEYA_LAB_CAP_K", DEFAULT_WINDOW_CAP)


def sprout_cap() -> int:
    return DEFAULT_SPROUT_CAP


def kakeya_cap() -> int:
    return _env_int("KAKEYA_LAB_CAP_J", DEFAULT_KAKEYA_CAP)
