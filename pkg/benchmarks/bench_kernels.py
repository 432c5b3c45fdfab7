"""Benchmark the compiled kernels against the pure-numpy fallback.

Runs the two hot paths at representative sizes: array-factor curve
evaluation (the beamspot CSV grid) and channel filling (the SV sweep
matrix).  Selects each backend explicitly, so the comparison works no
matter which one the ambient import picked.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import importlib
import statistics
import time

import numpy as np

from nfarray.geometry import ArrayGeometry, generate_layout

CASES = {
    # (positions of a 0.5-spaced ULA at D=35) x 2048 curve samples
    "af_curve_2048x141": lambda m: _bench_af(m, 35.0, 0.5, 2048),
    # dense aperture: D=60 at 0.125 spacing, one beamspot-plan curve set
    "af_curve_2048x481": lambda m: _bench_af(m, 60.0, 0.125, 2048),
    # SV sweep channel at ULA D=96 (193 elements) x 512 ranges
    "channel_512x193": lambda m: _bench_channel(m, ArrayGeometry.ULA, 96.0, 512),
    # URA D=32 grid (2209 elements) x 512 ranges
    "channel_512x2209": lambda m: _bench_channel(m, ArrayGeometry.URA, 32.0, 512),
}


def _layout_arrays(geometry, aperture, spacing):
    layout = generate_layout(geometry, aperture, spacing)
    p = layout.positions_wl
    rho2 = np.ascontiguousarray(p[:, 0] ** 2 + p[:, 1] ** 2)
    return rho2, np.ascontiguousarray(p[:, 2]), p


def _bench_af(module, aperture, spacing, samples):
    rho2, z, _ = _layout_arrays(ArrayGeometry.ULA, aperture, spacing)
    focal = 1.2 * aperture
    wphase = 2.0 * np.pi * np.sqrt(rho2 + (z - focal) ** 2)
    distances = np.geomspace(0.5 * focal, 40.0 * focal, samples)
    return lambda: module.af_magnitude(rho2, z, wphase, distances)


def _bench_channel(module, geometry, aperture, samples):
    rho2, z, _ = _layout_arrays(geometry, aperture, 0.5)
    ranges = np.geomspace(1.2 * aperture, 2.0 * aperture**2 / 6.952, samples)
    return lambda: module.channel_fill(rho2, z, ranges)


def _time(fn, repeats):
    fn()  # warm up
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    numpy_backend = importlib.import_module("nfarray._kernels._numpy_backend")
    try:
        compiled = importlib.import_module("nfarray._kernels._core")
    except ImportError:
        compiled = None
        print("compiled extension not built; timing the numpy backend only\n")

    width = max(len(name) for name in CASES)
    header = f"{'case':<{width}}  {'numpy best':>12}  {'compiled best':>14}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, make in CASES.items():
        np_best, _ = _time(make(numpy_backend), args.repeats)
        if compiled is not None:
            c_best, _ = _time(make(compiled), args.repeats)
            ratio = np_best / c_best
            print(
                f"{name:<{width}}  {np_best * 1e3:>10.3f} ms  {c_best * 1e3:>12.3f} ms  {ratio:>7.2f}x"
            )
        else:
            print(f"{name:<{width}}  {np_best * 1e3:>10.3f} ms  {'-':>14}  {'-':>8}")


if __name__ == "__main__":
    main()
