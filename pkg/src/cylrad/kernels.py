"""Kernel selection: compiled extension when importable, numpy otherwise.

Set ``CYLRAD_PURE_PYTHON=1`` to force the numpy implementation.
"""
from __future__ import annotations

import os

from . import _kernels_py

_compiled = None
if os.environ.get("CYLRAD_PURE_PYTHON", "") != "1":
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` ('compiled', 'python' or None for default)."""
    if name is None:
        name = BACKEND
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernel is not available in this build")
        return _compiled
    if name == "python":
        return _kernels_py
    raise ValueError(f"unknown kernel backend {name!r}")


def compiled_available() -> bool:
    return _compiled is not None


def mode_orders(*args, backend: str | None = None):
    return get_backend(backend).mode_orders(*args)
