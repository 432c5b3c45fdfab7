# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: array-factor accumulation and channel-matrix fill.

Same contracts as ``_numpy_backend``; scalar loops avoid the (M, N)
broadcast temporaries of the numpy path.
"""

from libc.math cimport cos, sin, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double TWO_PI = 6.283185307179586476925286766559


def af_magnitude(double[::1] rho2, double[::1] z, double[::1] wphase, distances_wl):
    """|sum_n exp(j (wphase_n - 2 pi r_n(d)))| / N for each distance."""
    d_arr = np.ascontiguousarray(distances_wl, dtype=np.float64)
    cdef double[::1] d = d_arr
    cdef Py_ssize_t m_count = d.shape[0]
    cdef Py_ssize_t n_count = rho2.shape[0]
    out_arr = np.empty(m_count, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t m, n
    cdef double dist, dz, r, ph, re, im

    with nogil:
        for m in range(m_count):
            dist = d[m]
            re = 0.0
            im = 0.0
            for n in range(n_count):
                dz = z[n] - dist
                r = sqrt(rho2[n] + dz * dz)
                ph = wphase[n] - TWO_PI * r
                re += cos(ph)
                im += sin(ph)
            out[m] = sqrt(re * re + im * im) / n_count
    return out_arr


def channel_fill(double[::1] rho2, double[::1] z, distances_wl):
    """Spherical-wave channel rows exp(-j 2 pi r) / r, one row per distance."""
    d_arr = np.ascontiguousarray(distances_wl, dtype=np.float64)
    cdef double[::1] d = d_arr
    cdef Py_ssize_t m_count = d.shape[0]
    cdef Py_ssize_t n_count = rho2.shape[0]
    out_arr = np.empty((m_count, n_count), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t m, n
    cdef double dist, dz, r, ph

    with nogil:
        for m in range(m_count):
            dist = d[m]
            for n in range(n_count):
                dz = z[n] - dist
                r = sqrt(rho2[n] + dz * dz)
                ph = -TWO_PI * r
                out[m, n] = (cos(ph) + 1j * sin(ph)) / r
    return out_arr
