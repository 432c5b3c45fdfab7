"""Array geometries, calibration constants and element layouts.

All lengths in this package are expressed in carrier wavelengths, so the
wavelength never appears explicitly in any formula.  ``to_wavelengths``
converts metric apertures at a given carrier into that normalized unit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

#: Exact speed of light, m/s.
SPEED_OF_LIGHT_M_S = 299_792_458.0

#: Default ratio of the inner near-field limit to the aperture diameter.
DEFAULT_BETA = 1.2

#: Default element spacing in wavelengths (half-wavelength sampling).
DEFAULT_SPACING_WL = 0.5


class ArrayGeometry(enum.Enum):
    """Supported aperture shapes, keyed by their CLI spelling."""

    ULA = "ula"
    UCA = "uca"
    URA = "ura"
    UPCA = "upca"


class Mode(enum.Enum):
    """Link configuration: one array (SIMO/MISO) or two (MIMO)."""

    SIMO_MISO = "simo-miso"
    MIMO = "mimo"


@dataclass(frozen=True)
class GeometryConstants:
    """Calibration constants of one aperture shape.

    :param alpha_simo_miso: beamdepth constant for single-array links.
    :param alpha_mimo: beamdepth constant when both ends use the array.
    :param kappa: prefactor of the significant-singular-value power law.
    :param gamma: exponent of the significant-singular-value power law.
    """

    alpha_simo_miso: float
    alpha_mimo: float
    kappa: float
    gamma: float


_CONSTANTS = {
    ArrayGeometry.ULA: GeometryConstants(6.952, 4.969, 0.434, 0.676),
    ArrayGeometry.UCA: GeometryConstants(5.737, 4.148, 0.503, 0.650),
    ArrayGeometry.URA: GeometryConstants(9.937, 7.068, 0.413, 0.662),
    ArrayGeometry.UPCA: GeometryConstants(7.087, 5.103, 0.383, 0.707),
}


def constants_for(geometry: ArrayGeometry) -> GeometryConstants:
    """Return the calibration constants of ``geometry``."""
    return _CONSTANTS[geometry]


def to_wavelengths(length_m: float, carrier_hz: float) -> float:
    """Convert a metric length to wavelengths at ``carrier_hz``."""
    if length_m <= 0.0:
        raise DomainError(f"length must be positive, got {length_m} m")
    if carrier_hz <= 0.0:
        raise DomainError(f"carrier frequency must be positive, got {carrier_hz} Hz")
    return length_m * carrier_hz / SPEED_OF_LIGHT_M_S


@dataclass(frozen=True)
class ApertureConfig:
    """One sizing problem: shape, aperture diameter and link mode.

    ``beta`` scales the inner near-field limit ``beta * aperture_wl``; values
    below 1.2 put the limit inside the reactive region and are rejected by
    the normal constructor.  Use :meth:`unchecked` to study them anyway.
    """

    geometry: ArrayGeometry
    aperture_wl: float
    beta: float = DEFAULT_BETA
    mode: Mode = Mode.SIMO_MISO
    _allow_small_beta: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self.aperture_wl <= 0.0:
            raise DomainError(f"aperture must be positive, got {self.aperture_wl} wavelengths")
        if self.beta <= 0.0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.beta < DEFAULT_BETA and not self._allow_small_beta:
            raise DomainError(
                f"beta = {self.beta} is below the radiative-region floor {DEFAULT_BETA}; "
                "use ApertureConfig.unchecked to override"
            )

    @classmethod
    def unchecked(
        cls,
        geometry: ArrayGeometry,
        aperture_wl: float,
        beta: float = DEFAULT_BETA,
        mode: Mode = Mode.SIMO_MISO,
    ) -> "ApertureConfig":
        """Construct without the ``beta >= 1.2`` floor (``beta > 0`` still holds)."""
        return cls(geometry, aperture_wl, beta, mode, _allow_small_beta=True)

    @property
    def constants(self) -> GeometryConstants:
        return constants_for(self.geometry)

    @property
    def alpha(self) -> float:
        """Beamdepth constant for this config's link mode."""
        c = self.constants
        return c.alpha_simo_miso if self.mode is Mode.SIMO_MISO else c.alpha_mimo


@dataclass(frozen=True, eq=False)
class ElementLayout:
    """Concrete element positions realizing an aperture.

    ``positions_wl`` is an (N, 3) array in wavelengths with the centroid at
    the origin.  The boresight axis is +z; planar layouts (ULA, URA, UPCA)
    lie in the z = 0 plane while the UCA ring stands in the xz-plane so that
    ring elements are spread in range along boresight rather than sitting
    equidistant from every axial point (which would collapse every axial
    channel to rank one).
    """

    geometry: ArrayGeometry
    aperture_wl: float
    spacing_wl: float
    positions_wl: np.ndarray

    def __post_init__(self):
        self.positions_wl.setflags(write=False)

    @property
    def n_elements(self) -> int:
        return self.positions_wl.shape[0]


def _ceil_count(ratio: float) -> int:
    # Guard against float dust pushing an exact integer ratio up a step.
    return int(math.ceil(ratio - 1e-9))


def generate_layout(
    geometry: ArrayGeometry,
    aperture_wl: float,
    spacing_wl: float = DEFAULT_SPACING_WL,
) -> ElementLayout:
    """Place elements at most ``spacing_wl`` apart across a given aperture.

    ULA: collinear along x, endpoints ``aperture_wl`` apart.
    UCA: single ring of diameter ``aperture_wl`` in the xz-plane, arc
    spacing at most ``spacing_wl``.
    URA: square grid in the xy-plane whose diagonal equals ``aperture_wl``.
    UPCA: half-wavelength-style square grid clipped to a disk of diameter
    ``aperture_wl`` in the xy-plane.
    """
    if aperture_wl <= 0.0:
        raise DomainError(f"aperture must be positive, got {aperture_wl} wavelengths")
    if not 0.0 < spacing_wl <= DEFAULT_SPACING_WL:
        raise DomainError(
            f"element spacing must lie in (0, {DEFAULT_SPACING_WL}] wavelengths, got {spacing_wl}"
        )

    if geometry is ArrayGeometry.ULA:
        n = _ceil_count(aperture_wl / spacing_wl) + 1
        x = np.linspace(-aperture_wl / 2.0, aperture_wl / 2.0, n)
        pos = np.stack([x, np.zeros(n), np.zeros(n)], axis=1)
    elif geometry is ArrayGeometry.UCA:
        n = _ceil_count(math.pi * aperture_wl / spacing_wl)
        theta = 2.0 * math.pi * np.arange(n) / n
        r = aperture_wl / 2.0
        pos = np.stack([r * np.cos(theta), np.zeros(n), r * np.sin(theta)], axis=1)
    elif geometry is ArrayGeometry.URA:
        side = aperture_wl / math.sqrt(2.0)
        m = _ceil_count(side / spacing_wl) + 1
        g = np.linspace(-side / 2.0, side / 2.0, m)
        gx, gy = np.meshgrid(g, g, indexing="ij")
        pos = np.stack([gx.ravel(), gy.ravel(), np.zeros(m * m)], axis=1)
    elif geometry is ArrayGeometry.UPCA:
        radius = aperture_wl / 2.0
        k = int(math.floor(radius / spacing_wl + 1e-9))
        g = spacing_wl * np.arange(-k, k + 1)
        gx, gy = np.meshgrid(g, g, indexing="ij")
        keep = gx**2 + gy**2 <= radius**2 + 1e-12
        pos = np.stack([gx[keep], gy[keep], np.zeros(int(keep.sum()))], axis=1)
    else:  # pragma: no cover - enum is closed
        raise DomainError(f"unknown geometry {geometry}")

    pos = pos - pos.mean(axis=0, keepdims=True)
    return ElementLayout(geometry, aperture_wl, spacing_wl, pos)
