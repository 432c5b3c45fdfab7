"""Channel-matrix singular-value spectra over the near-field interval.

The second independent oracle: a spherical-wave channel matrix is sampled
across the radiative near field of a layout, its singular values are
normalized to total power, and the count of values above a dB threshold is
compared against the closed-form power law ``floor(kappa D^gamma)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError
from .geometry import ApertureConfig, ArrayGeometry, ElementLayout, Mode, generate_layout
from .metrics import nf_limits, sv_count_power_law

DEFAULT_THRESHOLD_DB = -20.0

#: Sampling floor for the range dimension; doubled until the count settles.
MIN_RANGE_SAMPLES = 256
MAX_RANGE_SAMPLES = 2048


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """Spherical-wave channel samples: one row per range point.

    Entries are ``exp(-j 2 pi r) / r`` between each range sample on
    boresight and each element, amplitude included, so the spectrum sees
    the true distance-dependent power rolloff.
    """

    entries: np.ndarray
    range_samples_wl: np.ndarray
    layout: ElementLayout


@dataclass(frozen=True, eq=False)
class SvSpectrum:
    """Normalized singular-value powers of one channel matrix.

    ``normalized_powers_db`` is sorted descending and normalized so the
    linear powers sum to one; ``significant_count`` counts entries at or
    above ``threshold_db``.
    """

    normalized_powers_db: np.ndarray
    threshold_db: float
    significant_count: int


def build_channel(
    layout: ElementLayout,
    config: ApertureConfig,
    n_range_samples: int,
) -> ChannelMatrix:
    """Sample the channel at log-spaced ranges across ``[beta D, 2 D^2 / alpha]``."""
    if n_range_samples < 8:
        raise DomainError(f"need at least 8 range samples, got {n_range_samples}")
    limits = nf_limits(config)
    if limits.span_wl <= 0.0:
        raise DomainError(
            f"near-field interval is empty: [beta D, 2 D^2 / alpha] = "
            f"[{limits.d_min_wl:.6g}, {limits.d_max_wl:.6g}] wavelengths"
        )
    distances = np.geomspace(limits.d_min_wl, limits.d_max_wl, n_range_samples)
    pos = layout.positions_wl
    rho2 = np.ascontiguousarray(pos[:, 0] ** 2 + pos[:, 1] ** 2)
    z = np.ascontiguousarray(pos[:, 2])
    entries = _kernels.channel_fill(rho2, z, distances)
    return ChannelMatrix(entries, distances, layout)


def sv_spectrum(channel: ChannelMatrix, threshold_db: float = DEFAULT_THRESHOLD_DB) -> SvSpectrum:
    """Normalized singular-value power spectrum with a significance count."""
    if threshold_db >= 0.0:
        raise DomainError(f"threshold must be negative dB, got {threshold_db}")
    h = channel.entries
    if h.size == 0:
        raise DomainError("channel matrix is empty")
    # Eigenvalues of the smaller Gram matrix are the squared singular values.
    if h.shape[0] <= h.shape[1]:
        gram = h @ h.conj().T
    else:
        gram = h.conj().T @ h
    powers = np.linalg.eigvalsh(gram)[::-1]
    powers = np.clip(powers, 0.0, None)
    total = powers.sum()
    if total <= 0.0:
        raise DomainError("channel matrix is identically zero")
    normalized = powers / total
    with np.errstate(divide="ignore"):
        powers_db = 10.0 * np.log10(normalized)
    count = int(np.count_nonzero(powers_db >= threshold_db))
    return SvSpectrum(powers_db, threshold_db, count)


def _auto_samples(geometry: ArrayGeometry, aperture_wl: float) -> int:
    expected = max(1, sv_count_power_law(geometry, aperture_wl))
    return int(min(MAX_RANGE_SAMPLES, max(MIN_RANGE_SAMPLES, 16 * expected)))


def sweep_sv_counts(
    geometry: ArrayGeometry,
    apertures_wl,
    beta: float = 1.2,
    mode: Mode = Mode.SIMO_MISO,
    threshold_db: float = DEFAULT_THRESHOLD_DB,
    spacing_wl: float = 0.5,
    converge: bool = True,
) -> list[tuple[float, int]]:
    """Significant-SV count per aperture, with sampling-density convergence.

    For each aperture the range-sample count is doubled (up to
    ``MAX_RANGE_SAMPLES``) until the significant count stops changing, so
    reported counts do not depend on the sampling density.
    """
    if len(apertures_wl) == 0:
        raise DomainError("aperture list is empty")
    results = []
    for aperture in apertures_wl:
        config = ApertureConfig(geometry, aperture, beta, mode)
        layout = generate_layout(geometry, aperture, spacing_wl)
        n = _auto_samples(geometry, aperture)
        count = sv_spectrum(build_channel(layout, config, n), threshold_db).significant_count
        while converge and n < MAX_RANGE_SAMPLES:
            n = min(2 * n, MAX_RANGE_SAMPLES)
            again = sv_spectrum(build_channel(layout, config, n), threshold_db).significant_count
            if again == count:
                break
            count = again
        results.append((float(aperture), count))
    return results


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares fit of counts to ``kappa * D**gamma`` in log-log space."""

    kappa: float
    gamma: float
    residual: float
    sample_points: tuple[tuple[float, float], ...]


def fit_power_law(samples) -> PowerLawFit:
    """Fit ``count = kappa * aperture**gamma`` to (aperture, count) pairs.

    Counts may be fractional (pre-floor values) but must be at least 1;
    at least four distinct apertures are required.  The residual is the
    root-mean-square log-space misfit.
    """
    pairs = [(float(a), float(c)) for a, c in samples]
    if len(pairs) < 4:
        raise DomainError(f"need at least 4 samples to fit, got {len(pairs)}")
    apertures = np.array([a for a, _ in pairs])
    counts = np.array([c for _, c in pairs])
    if np.unique(apertures).size != apertures.size:
        raise DomainError("apertures must be distinct")
    if np.any(apertures <= 0.0):
        raise DomainError("apertures must be positive")
    if np.any(counts < 1.0):
        raise DomainError("counts below 1 cannot enter the log-log fit")
    log_a = np.log(apertures)
    log_c = np.log(counts)
    gamma, log_kappa = np.polyfit(log_a, log_c, 1)
    misfit = log_c - (gamma * log_a + log_kappa)
    residual = float(np.sqrt(np.mean(misfit**2)))
    return PowerLawFit(float(np.exp(log_kappa)), float(gamma), residual, tuple(pairs))
