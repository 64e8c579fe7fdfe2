"""Kernel backend chosen at import time.

The compiled extension is preferred; setting ``LOGMAJ_PURE=1`` forces the
numpy fallback.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from types import ModuleType
from typing import Iterator

from . import _fallback


def _load_compiled() -> ModuleType | None:
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


_compiled = _load_compiled()

if _compiled is not None and not os.environ.get("LOGMAJ_PURE"):
    kernels: ModuleType = _compiled
    BACKEND = "compiled"
else:
    kernels = _fallback
    BACKEND = "python"


def available_backends() -> dict[str, ModuleType]:
    found = {"python": _fallback}
    if _compiled is not None:
        found["compiled"] = _compiled
    return found


@contextmanager
def use_backend(name: str) -> Iterator[ModuleType]:
    """Temporarily route kernel calls to ``name`` ("compiled" or "python")."""
    global kernels, BACKEND
    found = available_backends()
    if name not in found:
        raise ValueError(f"backend {name!r} is not available; have {sorted(found)}")
    saved = kernels, BACKEND
    kernels, BACKEND = found[name], name
    try:
        yield kernels
    finally:
        kernels, BACKEND = saved
