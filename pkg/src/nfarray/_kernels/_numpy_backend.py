"""Vectorized numpy implementations of the two hot kernels.

Used when the compiled extension is unavailable or when ``NFARRAY_PURE``
is set.  Signatures and numerics mirror ``_core`` to rounding error.
"""

import numpy as np


def af_magnitude(rho2, z, wphase, distances_wl):
    """|sum_n exp(j (wphase_n - 2 pi r_n(d)))| / N for each distance.

    ``rho2`` holds x^2 + y^2 per element, ``z`` the boresight coordinate,
    ``wphase`` the weight phase per element in radians.
    """
    d = np.asarray(distances_wl, dtype=np.float64)
    r = np.sqrt(rho2[None, :] + (z[None, :] - d[:, None]) ** 2)
    total = np.exp(1j * (wphase[None, :] - 2.0 * np.pi * r)).sum(axis=1)
    return np.abs(total) / rho2.shape[0]


def channel_fill(rho2, z, distances_wl):
    """Spherical-wave channel rows exp(-j 2 pi r) / r, one row per distance."""
    d = np.asarray(distances_wl, dtype=np.float64)
    r = np.sqrt(rho2[None, :] + (z[None, :] - d[:, None]) ** 2)
    return np.exp(-2j * np.pi * r) / r
