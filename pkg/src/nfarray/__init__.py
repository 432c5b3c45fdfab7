"""Wavelength-normalized sizing metrics for near-field antenna arrays.

Closed-form beamdepth, near-field span and beam/singular-value counts for
four aperture shapes, cross-validated in-package against two independent
numerical oracles (exact array factors and channel-matrix spectra), plus a
CLI for reports, sizing inversions and curve datasets.
"""

from ._kernels import BACKEND
from .errors import DivergedBeamError, DomainError
from .geometry import (
    DEFAULT_BETA,
    DEFAULT_SPACING_WL,
    SPEED_OF_LIGHT_M_S,
    ApertureConfig,
    ArrayGeometry,
    ElementLayout,
    GeometryConstants,
    Mode,
    constants_for,
    generate_layout,
    to_wavelengths,
)
from .metrics import (
    BeamEdges,
    NearFieldLimits,
    asymptotic_beamdepth,
    beam_edges,
    beamdepth,
    beamspot_count_closed_form,
    has_nf_region,
    min_aperture_for_fraction,
    min_beamdepth,
    nf_limits,
    sv_count_power_law,
)
from .sv_analysis import (
    ChannelMatrix,
    PowerLawFit,
    SvSpectrum,
    build_channel,
    fit_power_law,
    sv_spectrum,
    sweep_sv_counts,
)
from .wavefield import (
    AfCurveTable,
    BeamspotPlan,
    FocusedArrayFactor,
    array_factor,
    emit_af_curves,
    find_3db_edges_numeric,
    fit_beamspots,
    numeric_plan_edges,
)

__version__ = "0.1.0"

__all__ = [
    "ApertureConfig",
    "ArrayGeometry",
    "AfCurveTable",
    "BACKEND",
    "BeamEdges",
    "BeamspotPlan",
    "ChannelMatrix",
    "DEFAULT_BETA",
    "DEFAULT_SPACING_WL",
    "DivergedBeamError",
    "DomainError",
    "ElementLayout",
    "FocusedArrayFactor",
    "GeometryConstants",
    "Mode",
    "NearFieldLimits",
    "PowerLawFit",
    "SPEED_OF_LIGHT_M_S",
    "SvSpectrum",
    "array_factor",
    "asymptotic_beamdepth",
    "beam_edges",
    "beamdepth",
    "beamspot_count_closed_form",
    "build_channel",
    "constants_for",
    "emit_af_curves",
    "find_3db_edges_numeric",
    "fit_beamspots",
    "fit_power_law",
    "generate_layout",
    "has_nf_region",
    "min_aperture_for_fraction",
    "min_beamdepth",
    "nf_limits",
    "numeric_plan_edges",
    "sv_count_power_law",
    "sv_spectrum",
    "sweep_sv_counts",
    "to_wavelengths",
    "__version__",
]
