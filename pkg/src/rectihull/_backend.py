"""Kernel backend selection.

The compiled Cython extension is preferred when importable; the pure-Python
fallback gives identical results.  ``RECTIHULL_BACKEND=python`` forces the
fallback (useful for the backend-comparison benchmark and for debugging).
"""

from __future__ import annotations

import os

from . import _kernels_py


def _load():
    if os.environ.get("RECTIHULL_BACKEND", "").lower() == "python":
        return _kernels_py
    try:
        from . import _kernels as compiled  # noqa: PLC0415
    except ImportError:
        return _kernels_py
    return compiled


_impl = _load()

BACKEND_NAME: str = _impl.BACKEND_NAME
maxima_mask = _impl.maxima_mask
angular_extremes = _impl.angular_extremes


def backends():
    """All importable kernel backends, keyed by name."""
    out = {_kernels_py.BACKEND_NAME: _kernels_py}
    try:
        from . import _kernels as compiled  # noqa: PLC0415
        out[compiled.BACKEND_NAME] = compiled
    except ImportError:
        pass
    return out
