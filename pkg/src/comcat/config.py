"""Numeric tolerance used by all floating-point (spectral) checks.

Exact polyhedral paths never consult this; only PSD-cone membership,
eigenvalue checks and float residual comparisons do.
"""

from __future__ import annotations

import os

DEFAULT_TOLERANCE = 1e-9
DEFAULT_SEED = 20260808

_ENV_VAR = "COMCAT_TOLERANCE"
_override: float | None = None


def numeric_tolerance() -> float:
    """Current tolerance: explicit override > environment > default."""
    if _override is not None:
        return _override
    raw = os.environ.get(_ENV_VAR)
    if raw is not None and raw != "":
        return float(raw)
    return DEFAULT_TOLERANCE


def set_tolerance(value: float | None) -> None:
    """Set (or clear, with None) the process-wide tolerance override."""
    global _override
    if value is not None and value <= 0:
        raise ValueError("tolerance must be positive")
    _override = value
