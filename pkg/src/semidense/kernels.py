"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python twin in ``_kernels_py`` is used. Setting ``SEMIDENSE_PURE_PYTHON=1``
forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


def available_backends() -> dict[str, ModuleType]:
    backends = {"python": _kernels_py}
    compiled = _load_compiled()
    if compiled is not None:
        backends["cython"] = compiled
    return backends


def _select() -> tuple[str, ModuleType]:
    if os.environ.get("SEMIDENSE_PURE_PYTHON", "") not in ("", "0"):
        return "python", _kernels_py
    compiled = _load_compiled()
    if compiled is None:
        return "python", _kernels_py
    return "cython", compiled


BACKEND, _impl = _select()

first_nonassociative = _impl.first_nonassociative
enumerate_tables = _impl.enumerate_tables
is_canonical = _impl.is_canonical
invariant_subsets = _impl.invariant_subsets
dt_oracle = _impl.dt_oracle

DEDUP_MODES = {"none": 0, "iso": 1, "iso+anti": 2}
