"""Kernel selection: the compiled extension when available, else pure Python.

Set SHOCKSIM_KERNEL=python or SHOCKSIM_KERNEL=compiled to force a choice.
"""

from __future__ import annotations

import os

from . import _core_py

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

KERNEL_ENV = "SHOCKSIM_KERNEL"


def available_kernels() -> dict[str, object]:
    kernels = {"python": _core_py}
    if _core is not None:
        kernels["compiled"] = _core
    return kernels


def active_kernel():
    """Kernel module selected by SHOCKSIM_KERNEL, defaulting to the compiled one."""
    choice = os.environ.get(KERNEL_ENV, "").strip().lower()
    kernels = available_kernels()
    if choice:
        if choice not in ("python", "compiled"):
            raise ValueError(f"{KERNEL_ENV} must be 'python' or 'compiled', got {choice!r}")
        if choice not in kernels:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        return kernels[choice]
    return kernels.get("compiled", _core_py)


def active_kernel_name() -> str:
    return "compiled" if active_kernel() is _core else "python"
