"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``LAWECSE_PURE_PYTHON=1`` to force the Python kernel.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    if os.environ.get("LAWECSE_PURE_PYTHON"):
        raise ImportError("pure Python kernel requested")
    from . import _ckernel
except ImportError:
    _ckernel = None

KERNELS = {"python": _pykernel}
if _ckernel is not None:
    KERNELS["c"] = _ckernel

DEFAULT = "c" if _ckernel is not None else "python"


def get_kernel(name: str | None = None):
    name = DEFAULT if name in (None, "auto") else name
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(
            f"kernel {name!r} unavailable; have {sorted(KERNELS)}"
        ) from None
