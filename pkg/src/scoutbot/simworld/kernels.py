"""Kernel backend selection: compiled extension if built, else pure Python.

Set SCOUT_KERNELS=python to force the fallback; SCOUT_KERNELS=cython to
require the compiled extension (ImportError if it is missing).
"""

import os

from . import _kernels_py

_choice = os.environ.get("SCOUT_KERNELS", "auto").lower()

if _choice == "python":
    _impl = _kernels_py
elif _choice == "cython":
    from . import _kernels as _impl  # noqa: F401 - fail loudly if not built
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
cast_rays = _impl.cast_rays
trace_rays_into_grid = _impl.trace_rays_into_grid

HIT_BOUNDS = _kernels_py.HIT_BOUNDS
HIT_CLIPPED = _kernels_py.HIT_CLIPPED
UNKNOWN = _kernels_py.UNKNOWN
FREE = _kernels_py.FREE
OCCUPIED = _kernels_py.OCCUPIED


def available_backends():
    names = ["python"]
    try:
        from . import _kernels  # noqa: F401
        names.append("cython")
    except ImportError:
        pass
    return names


def backend_module(name: str):
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")
