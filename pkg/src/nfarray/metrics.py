"""Closed-form near-field sizing metrics.

Every function works in wavelength units on an :class:`ApertureConfig`.
The central quantities are the Fraunhofer distance ``F = 2 D^2`` (in
wavelengths), the radiative near-field interval ``[beta D, F / alpha]``
and the -3 dB beamdepth around a focal distance ``d``:

    BD(d) = 2 alpha F d^2 / (F^2 - alpha^2 d^2)

with the geometry- and mode-dependent constant ``alpha``.  The remaining
formulas (edges, minima, asymptote, counts) are exact consequences of that
expression and are kept in the same algebraic form so results agree with
the numerical oracles in :mod:`nfarray.wavefield` to float precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .geometry import ApertureConfig, ArrayGeometry, Mode, constants_for

#: Absolute nudge applied before flooring count formulas, so values that are
#: mathematically integral do not land one short through float dust.
FLOOR_NUDGE = 1e-9


@dataclass(frozen=True)
class NearFieldLimits:
    """Radiative near-field interval of one configuration.

    ``span_wl`` may be negative when the aperture is too small to have a
    near-field region at all; it is reported as-is so sweeps stay smooth.
    """

    fraunhofer_wl: float
    d_min_wl: float
    d_max_wl: float
    span_wl: float


@dataclass(frozen=True)
class BeamEdges:
    """The -3 dB interval around one focal distance."""

    focal_wl: float
    left_wl: float
    right_wl: float

    @property
    def depth_wl(self) -> float:
        return self.right_wl - self.left_wl


def _fraunhofer(config: ApertureConfig) -> float:
    return 2.0 * config.aperture_wl**2


def nf_limits(config: ApertureConfig) -> NearFieldLimits:
    """Near-field limits ``[beta D, 2 D^2 / alpha]`` and their span."""
    fraunhofer = _fraunhofer(config)
    d_min = config.beta * config.aperture_wl
    d_max = fraunhofer / config.alpha
    return NearFieldLimits(fraunhofer, d_min, d_max, d_max - d_min)


def has_nf_region(config: ApertureConfig) -> bool:
    """True when the radiative near-field interval is non-empty."""
    return nf_limits(config).span_wl >= 0.0


def beamdepth(config: ApertureConfig, focal_wl: float) -> float:
    """-3 dB beamdepth at focal distance ``focal_wl`` (zero at zero)."""
    f = _fraunhofer(config)
    d_max = f / config.alpha
    if not 0.0 <= focal_wl < d_max:
        raise DomainError(
            f"focal distance must lie in [0, {d_max:.6g}) wavelengths "
            f"(finite beamdepth requires alpha * d < fraunhofer), got {focal_wl}"
        )
    return 2.0 * config.alpha * f * focal_wl**2 / (f**2 - config.alpha**2 * focal_wl**2)


def beam_edges(config: ApertureConfig, focal_wl: float) -> BeamEdges:
    """-3 dB edge pair around ``focal_wl``; right - left equals the beamdepth."""
    f = _fraunhofer(config)
    d_max = f / config.alpha
    if not 0.0 < focal_wl < d_max:
        raise DomainError(
            f"focal distance must lie in (0, {d_max:.6g}) wavelengths, got {focal_wl}"
        )
    left = f * focal_wl / (f + config.alpha * focal_wl)
    right = f * focal_wl / (f - config.alpha * focal_wl)
    return BeamEdges(focal_wl, left, right)


def min_beamdepth(config: ApertureConfig) -> float:
    """Smallest beamdepth over the near-field interval, reached at ``beta D``."""
    ab = config.alpha * config.beta
    if config.aperture_wl <= ab / 2.0:
        raise DomainError(
            f"minimum beamdepth requires aperture > alpha * beta / 2 "
            f"= {ab / 2.0:.6g} wavelengths, got {config.aperture_wl}"
        )
    return 4.0 * config.alpha * config.beta**2 / (4.0 - ab**2 / config.aperture_wl**2)


def asymptotic_beamdepth(config: ApertureConfig) -> float:
    """Large-aperture limit ``alpha * beta^2`` of the minimum beamdepth."""
    return config.alpha * config.beta**2


def min_aperture_for_fraction(
    geometry: ArrayGeometry,
    eta: float,
    beta: float = 1.2,
    mode: Mode = Mode.SIMO_MISO,
) -> float:
    """Smallest aperture whose minimum beamdepth reaches fraction ``eta``
    of the asymptotic value: ``(alpha beta / 2) sqrt(eta / (1 - eta))``."""
    if not 0.0 < eta < 1.0:
        raise DomainError(f"resolution fraction must lie in (0, 1), got {eta}")
    c = constants_for(geometry)
    alpha = c.alpha_simo_miso if mode is Mode.SIMO_MISO else c.alpha_mimo
    return alpha * beta / 2.0 * math.sqrt(eta / (1.0 - eta))


def nudged_floor(value: float) -> int:
    """Floor after a 1e-9 nudge, so exact integers survive float rounding."""
    return int(math.floor(value + FLOOR_NUDGE))


def beamspot_count_closed_form(config: ApertureConfig) -> int:
    """Number of non-overlapping -3 dB beamspots packing the near field:

    floor(D / (alpha beta) + alpha beta / (4 D - 2 alpha beta) - 1/2)
    """
    ab = config.alpha * config.beta
    d = config.aperture_wl
    if d < ab:
        raise DomainError(
            f"beamspot packing requires aperture >= alpha * beta "
            f"= {ab:.6g} wavelengths, got {d} (no finite beam fits the near field)"
        )
    return nudged_floor(d / ab + ab / (4.0 * d - 2.0 * ab) - 0.5)


def sv_count_power_law(geometry: ArrayGeometry, aperture_wl: float) -> int:
    """Significant-singular-value count ``floor(kappa * D**gamma)``."""
    if aperture_wl <= 0.0:
        raise DomainError(f"aperture must be positive, got {aperture_wl} wavelengths")
    c = constants_for(geometry)
    return nudged_floor(c.kappa * aperture_wl**c.gamma)
