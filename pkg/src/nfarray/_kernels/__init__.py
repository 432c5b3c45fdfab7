"""Kernel backend selection.

The compiled Cython core is preferred when it imported cleanly; setting
``NFARRAY_PURE`` (to any non-empty value) before import forces the numpy
backend.  Both expose the same two functions with identical semantics:

    af_magnitude(rho2, z, wphase, distances_wl) -> (M,) float64
    channel_fill(rho2, z, distances_wl)         -> (M, N) complex128
"""

import os

from . import _numpy_backend

if os.environ.get("NFARRAY_PURE"):
    _impl = _numpy_backend
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _numpy_backend
        BACKEND = "python"

af_magnitude = _impl.af_magnitude
channel_fill = _impl.channel_fill

__all__ = ["BACKEND", "af_magnitude", "channel_fill"]
