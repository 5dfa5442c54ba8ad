"""Numerical tolerances.

Rank and PSD cutoffs are fixed. The two certification tolerances
(identities and inequalities) can be overridden together through the
``NFRAME_TOL`` environment variable.
"""
import math
import os

from .errors import InputError

RANK_RCOND = 1e-10
PSD_RTOL = 1e-10
ROUNDOFF_CLAMP = 1e-12

_IDENTITY_DEFAULT = 1e-9
_INEQUALITY_DEFAULT = 1e-8


def _override():
    raw = os.environ.get("NFRAME_TOL")
    if raw is None or raw.strip() == "":
        return None
    try:
        value = float(raw)
    except ValueError:
        raise InputError(f"NFRAME_TOL is not a number: {raw!r}") from None
    if not (value > 0 and math.isfinite(value)):
        raise InputError(f"NFRAME_TOL must be positive, got {raw!r}")
    return value


def identity_tol() -> float:
    """Relative tolerance for identities (equalities between quantities)."""
    value = _override()
    return _IDENTITY_DEFAULT if value is None else value


def inequality_tol() -> float:
    """Relative slack allowed on inequalities."""
    value = _override()
    return _INEQUALITY_DEFAULT if value is None else value
