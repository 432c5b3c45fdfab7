"""Exact wavefield oracles and -3 dB beamspot planning.

The array factor here is the exact spherical-wave pattern of a concrete
element layout under conjugate-phase focusing, evaluated along boresight.
It serves as the independent check on the closed forms in
:mod:`nfarray.metrics`: numerical -3 dB edges are found by bisection on
the exact pattern, while beamspot plans are packed from the closed-form
edge expressions and cross-checked against those numerical edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DivergedBeamError, DomainError
from .geometry import ApertureConfig, ElementLayout, constants_for, generate_layout
from .metrics import BeamEdges, beam_edges, nf_limits

#: Half-power level of the focused pattern.
HALF_POWER = 1.0 / math.sqrt(2.0)

#: Relative tolerance of the bisection edge search.
EDGE_REL_TOL = 1e-6


class FocusedArrayFactor:
    """Normalized array factor of a layout focused at one distance.

    Weights are phase-only conjugates of the element-to-focus path phases,
    so the magnitude at the focal point is exactly 1.  Path loss is not part
    of the pattern; only phase misalignment reduces it.  A focal distance of
    ``None`` (or infinity) focuses at the plane-wave limit.
    """

    def __init__(self, layout: ElementLayout, focal_wl: float | None):
        pos = layout.positions_wl
        self._rho2 = np.ascontiguousarray(pos[:, 0] ** 2 + pos[:, 1] ** 2)
        self._z = np.ascontiguousarray(pos[:, 2])
        self.layout = layout
        self.focal_wl = focal_wl
        if focal_wl is None or math.isinf(focal_wl):
            # Plane-wave limit of r_n(f) - f as f -> infinity is -z_n.
            self._wphase = -2.0 * np.pi * self._z
            self.focal_wl = None
        else:
            if focal_wl <= 0.0:
                raise DomainError(f"focal distance must be positive, got {focal_wl}")
            r_focus = np.sqrt(self._rho2 + (self._z - focal_wl) ** 2)
            self._wphase = 2.0 * np.pi * r_focus
        self._wphase = np.ascontiguousarray(self._wphase)

    def __call__(self, distance_wl):
        """Array factor magnitude in [0, 1] at scalar or array distances."""
        d = np.asarray(distance_wl, dtype=np.float64)
        if np.any(d <= 0.0):
            raise DomainError("evaluation distances must be positive")
        out = _kernels.af_magnitude(self._rho2, self._z, self._wphase, np.atleast_1d(d))
        return float(out[0]) if d.ndim == 0 else out.reshape(d.shape)


def array_factor(layout: ElementLayout, focal_wl: float | None, distance_wl):
    """One-shot evaluation; build a :class:`FocusedArrayFactor` for sweeps."""
    return FocusedArrayFactor(layout, focal_wl)(distance_wl)


def _bisect_crossing(af, lo: float, hi: float, rel_tol: float) -> float:
    # af(lo) and af(hi) straddle HALF_POWER; returns the crossing distance.
    f_lo = af(lo) - HALF_POWER
    while (hi - lo) > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        f_mid = af(mid) - HALF_POWER
        if (f_lo > 0.0) == (f_mid > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_3db_edges_numeric(
    layout: ElementLayout,
    focal_wl: float,
    rel_tol: float = EDGE_REL_TOL,
) -> BeamEdges:
    """Locate the -3 dB crossings of the exact pattern around a focus.

    Brackets grow geometrically (factor 2) away from the focal point on each
    side, bounded by ``0.1 * focal`` inward and one hundred Fraunhofer-over-
    alpha distances outward; bisection then refines to ``rel_tol`` relative
    width.  Raises :class:`DivergedBeamError` when a side never falls below
    half power inside its bracket, which signals a focus at or beyond the
    outer near-field limit.
    """
    if focal_wl <= 0.0:
        raise DomainError(f"focal distance must be positive, got {focal_wl}")
    af = FocusedArrayFactor(layout, focal_wl)
    alpha = constants_for(layout.geometry).alpha_simo_miso
    outer_bound = 100.0 * 2.0 * layout.aperture_wl**2 / alpha

    edges = []
    for direction in (-1.0, +1.0):
        inner = focal_wl
        step = focal_wl * 1e-3
        crossing = None
        while True:
            candidate = focal_wl + direction * step
            if direction < 0.0 and candidate <= 0.1 * focal_wl:
                candidate = 0.1 * focal_wl
            if direction > 0.0 and candidate >= outer_bound:
                candidate = outer_bound
            if af(candidate) < HALF_POWER:
                lo, hi = sorted((inner, candidate))
                crossing = _bisect_crossing(af, lo, hi, rel_tol)
                break
            if candidate in (0.1 * focal_wl, outer_bound):
                raise DivergedBeamError(
                    f"no half-power crossing on the {'left' if direction < 0 else 'right'} "
                    f"side of focus {focal_wl:.6g} within [{0.1 * focal_wl:.6g}, "
                    f"{outer_bound:.6g}] wavelengths; focus is too close to or beyond "
                    "the outer near-field limit"
                )
            inner = candidate
            step *= 2.0
        edges.append(crossing)

    return BeamEdges(focal_wl, edges[0], edges[1])


@dataclass(frozen=True)
class BeamspotPlan:
    """Non-overlapping -3 dB beamspots tiling the radiative near field.

    Beams are sorted by focal distance; each right edge equals the next
    beam's left edge, so the union covers ``covered_interval_wl`` without
    gaps.  The first focus sits at the inner limit ``beta * D`` (only the
    right half of that beam lies inside the region).
    """

    config: ApertureConfig
    beams: tuple[BeamEdges, ...]
    covered_interval_wl: tuple[float, float]


def fit_beamspots(config: ApertureConfig) -> BeamspotPlan:
    """Greedily chain -3 dB beams across the near-field interval.

    Starting at ``beta * D``, each next focal distance is the point whose
    left edge equals the previous beam's right edge; the chain stops when a
    candidate focus would land beyond the outer limit ``2 D^2 / alpha``.
    """
    ab = config.alpha * config.beta
    if config.aperture_wl < ab:
        raise DomainError(
            f"beamspot packing requires aperture >= alpha * beta = {ab:.6g} "
            f"wavelengths, got {config.aperture_wl} (no finite beam fits the "
            "near field)"
        )
    limits = nf_limits(config)
    fraunhofer, d_max = limits.fraunhofer_wl, limits.d_max_wl
    focal = limits.d_min_wl

    beams = []
    while focal <= d_max and config.alpha * focal < fraunhofer:
        edges = beam_edges(config, focal)
        beams.append(edges)
        right = edges.right_wl
        if config.alpha * right >= fraunhofer:
            break
        # Next focus: the distance whose left edge equals this right edge.
        focal = fraunhofer * right / (fraunhofer - config.alpha * right)

    return BeamspotPlan(
        config,
        tuple(beams),
        (beams[0].focal_wl, beams[-1].right_wl),
    )


def numeric_plan_edges(
    layout: ElementLayout,
    plan: BeamspotPlan,
    rel_tol: float = EDGE_REL_TOL,
) -> tuple[BeamEdges, ...]:
    """Re-measure every planned beam's edges on the exact pattern."""
    return tuple(
        find_3db_edges_numeric(layout, beam.focal_wl, rel_tol) for beam in plan.beams
    )


@dataclass(frozen=True, eq=False)
class AfCurveTable:
    """Array-factor curves of a beamspot plan on a shared distance grid."""

    distances_wl: np.ndarray
    beam_columns: np.ndarray  # shape (samples, n_beams)
    farfield_column: np.ndarray


def emit_af_curves(
    config: ApertureConfig,
    plan: BeamspotPlan,
    samples: int = 512,
    spacing_wl: float | None = None,
) -> AfCurveTable:
    """Tabulate each planned beam plus the far-field pattern.

    Distances are log-spaced over ``[d_min / 2, 4 d_max]`` so both the
    focused mainlobes and the far-field rolloff are visible.
    """
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    limits = nf_limits(config)
    layout = generate_layout(
        config.geometry,
        config.aperture_wl,
        spacing_wl if spacing_wl is not None else 0.5,
    )
    distances = np.geomspace(limits.d_min_wl / 2.0, 4.0 * limits.d_max_wl, samples)
    columns = np.empty((samples, len(plan.beams)))
    for k, beam in enumerate(plan.beams):
        columns[:, k] = FocusedArrayFactor(layout, beam.focal_wl)(distances)
    farfield = FocusedArrayFactor(layout, None)(distances)
    return AfCurveTable(distances, columns, farfield)
