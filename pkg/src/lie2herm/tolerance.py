"""Global comparison tolerance.

The default is 1e-9. The ``LIE2_TOL`` environment variable overrides it, and
``set_default_tol`` overrides both for the current process (used by the CLI's
``--tol`` flag).
"""
from __future__ import annotations

import os

DEFAULT_TOL = 1e-9
_override: float | None = None


def default_tol() -> float:
    if _override is not None:
        return _override
    env = os.environ.get("LIE2_TOL")
    if env:
        return float(env)
    return DEFAULT_TOL


def set_default_tol(tol: float | None) -> None:
    global _override
    _override = tol


def resolve(tol: float | None) -> float:
    return default_tol() if tol is None else tol
