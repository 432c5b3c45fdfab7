"""Command-line interface: reports, sizing inversions and curve datasets.

Subcommands
-----------
metrics    near-field limits, beamdepth minima and counts for one config
size       smallest aperture meeting resolution / span / count requirements
beamspots  -3 dB beamspot plan across the near field, optional AF curves
svsweep    simulated significant-singular-value counts over apertures
curves     figure-ready CSV datasets (beamdepth, minima, span, counts)

Reports print as an aligned key-value table (``--format table``, default)
or as JSON (``--format machine``); curve datasets are CSV with a one-line
header.  Every numeric field is serialized with 9 significant digits, and
documents contain only wavelength-domain values, so a run specified in
meters plus carrier frequency emits byte-identical data files to the same
run specified in wavelengths.  Each file written is paired with a
``<file>.manifest.json`` sidecar carrying the command echo, tool version
and a UTC timestamp; manifests are excluded from byte-identity.

The default ``beta`` (inner-limit ratio, 1.2) can be overridden with the
``NFARRAY_BETA`` environment variable; an explicit ``--beta`` wins.  Exit
status is nonzero exactly when a usage or domain error occurred.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .errors import DomainError
from .geometry import (
    DEFAULT_BETA,
    ApertureConfig,
    ArrayGeometry,
    Mode,
    generate_layout,
    to_wavelengths,
)
from .metrics import (
    asymptotic_beamdepth,
    beamdepth,
    beamspot_count_closed_form,
    has_nf_region,
    min_aperture_for_fraction,
    min_beamdepth,
    nf_limits,
    sv_count_power_law,
)
from .sv_analysis import (
    DEFAULT_THRESHOLD_DB,
    build_channel,
    fit_power_law,
    sv_spectrum,
    sweep_sv_counts,
)
from .wavefield import emit_af_curves, fit_beamspots, numeric_plan_edges

BETA_ENV_VAR = "NFARRAY_BETA"

#: Absolute tolerance of the sizing bisections.
SIZE_TOL_WL = 1e-4


def _fmt(value) -> str:
    """Serialize one value with 9 significant digits."""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.9g}"
    return str(value)


def _round9(obj):
    """Recursively round floats to 9 significant digits for JSON output."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.9g}")
    if isinstance(obj, dict):
        return {k: _round9(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round9(v) for v in obj]
    return obj


def _table_lines(doc: dict, indent: str = "") -> list[str]:
    lines = []
    width = max((len(k) for k in doc), default=0) + 2
    for key, value in doc.items():
        if isinstance(value, dict):
            if not value:
                continue
            lines.append(f"{indent}{key}")
            lines.extend(_table_lines(value, indent + "  "))
        elif isinstance(value, (list, tuple)) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}")
            for row in value:
                cells = "  ".join(f"{k}={_fmt(v)}" for k, v in row.items())
                lines.append(f"{indent}  {cells}")
        elif isinstance(value, (list, tuple)):
            lines.append(f"{indent}{key:<{width}}{', '.join(_fmt(v) for v in value)}")
        else:
            lines.append(f"{indent}{key:<{width}}{_fmt(value)}")
    return lines


def _render(doc: dict, fmt: str) -> str:
    if fmt == "machine":
        return json.dumps(_round9(doc), indent=2) + "\n"
    return "\n".join(_table_lines(doc)) + "\n"


def _write_manifest(path: str, argv: list[str], fmt: str) -> None:
    manifest = {
        "tool": "nfarray",
        "version": __version__,
        "command": argv,
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "path": path,
        "format": fmt,
    }
    with open(path + ".manifest.json", "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2)
        handle.write("\n")


def _emit_report(doc: dict, args, argv: list[str]) -> None:
    text = _render(doc, args.format)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        _write_manifest(args.output, argv, args.format)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)


def _write_csv(path: str, header: list[str], rows, argv: list[str]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(cell) for cell in row) + "\n")
            count += 1
    _write_manifest(path, argv, "csv")
    print(f"wrote {path} ({count} rows)")
    return count


def _parse_list(text: str, parser) -> list[float]:
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        parser.error(f"could not parse list {text!r}; expected comma-separated numbers")
    if not values:
        parser.error("list of values is empty")
    return values


def _parse_range(text: str, parser) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        parser.error(f"could not parse range {text!r}; expected lo:hi:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        parser.error(f"could not parse range {text!r}; expected lo:hi:count")
    if count < 2 or hi <= lo:
        parser.error(f"range {text!r} must satisfy lo < hi and count >= 2")
    return np.linspace(lo, hi, count)


def _resolve_beta(args) -> float:
    if args.beta is not None:
        return args.beta
    env = os.environ.get(BETA_ENV_VAR)
    if env:
        try:
            return float(env)
        except ValueError:
            raise DomainError(f"{BETA_ENV_VAR}={env!r} is not a number")
    return DEFAULT_BETA


def _resolve_config(args, parser) -> ApertureConfig:
    wl_given = args.aperture_wl is not None
    m_given = args.aperture_m is not None or args.carrier_ghz is not None
    if wl_given and m_given:
        parser.error("give either --aperture-wl or --aperture-m with --carrier-ghz, not both")
    if wl_given:
        aperture = args.aperture_wl
    else:
        if args.aperture_m is None or args.carrier_ghz is None:
            parser.error("metric input needs both --aperture-m and --carrier-ghz")
        aperture = to_wavelengths(args.aperture_m, args.carrier_ghz * 1e9)
    return ApertureConfig(
        ArrayGeometry(args.geometry),
        aperture,
        _resolve_beta(args),
        Mode(args.mode),
    )


def _config_doc(config: ApertureConfig) -> dict:
    return {
        "geometry": config.geometry.value,
        "mode": config.mode.value,
        "beta": config.beta,
        "aperture_wl": config.aperture_wl,
    }


def _add_geometry_args(p, with_aperture: bool = True) -> None:
    p.add_argument(
        "--geometry",
        required=True,
        choices=[g.value for g in ArrayGeometry],
        help="aperture shape",
    )
    if with_aperture:
        p.add_argument("--aperture-wl", type=float, help="aperture diameter in wavelengths")
        p.add_argument("--aperture-m", type=float, help="aperture diameter in meters")
        p.add_argument("--carrier-ghz", type=float, help="carrier frequency in GHz")
    p.add_argument("--beta", type=float, help=f"inner-limit ratio (default {DEFAULT_BETA})")
    p.add_argument(
        "--mode",
        choices=[m.value for m in Mode],
        default=Mode.SIMO_MISO.value,
        help="link mode (default simo-miso)",
    )


def _add_output_args(p) -> None:
    p.add_argument("--format", choices=["table", "machine"], default="table")
    p.add_argument("--output", help="write the report to this file instead of stdout")


def cmd_metrics(args, parser, argv: list[str]) -> int:
    config = _resolve_config(args, parser)
    limits = nf_limits(config)
    errors: dict[str, str] = {}
    doc = _config_doc(config)
    doc.update(
        {
            "fraunhofer_wl": limits.fraunhofer_wl,
            "d_min_wl": limits.d_min_wl,
            "d_max_wl": limits.d_max_wl,
            "span_wl": limits.span_wl,
            "has_nf_region": has_nf_region(config),
        }
    )
    for key, fn in (
        ("min_beamdepth_wl", lambda: min_beamdepth(config)),
        ("asymptotic_beamdepth_wl", lambda: asymptotic_beamdepth(config)),
        ("beamspot_count", lambda: beamspot_count_closed_form(config)),
        ("sv_count_power_law", lambda: sv_count_power_law(config.geometry, config.aperture_wl)),
    ):
        try:
            doc[key] = fn()
        except DomainError as exc:
            doc[key] = None
            errors[key] = str(exc)
    doc["errors"] = errors
    _emit_report(doc, args, argv)
    return 1 if errors else 0


def _bisect_min_aperture(predicate, lo: float, hi_seed: float) -> float:
    """Smallest aperture satisfying a monotone predicate, within SIZE_TOL_WL.

    Returns the upper bracket end, so the predicate is guaranteed true at
    the returned value.
    """
    if predicate(lo):
        return lo
    hi = hi_seed
    for _ in range(200):
        if predicate(hi):
            break
        hi *= 2.0
    else:
        raise DomainError("requirement is not reachable by any aperture")
    while hi - lo > SIZE_TOL_WL:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def cmd_size(args, parser, argv: list[str]) -> int:
    geometry = ArrayGeometry(args.geometry)
    beta = _resolve_beta(args)
    mode = Mode(args.mode)
    if args.eta is None and args.min_span is None and args.min_nbd is None and args.min_nsv is None:
        parser.error("give at least one requirement: --eta / --min-span / --min-nbd / --min-nsv")

    def config_at(aperture: float) -> ApertureConfig:
        return ApertureConfig(geometry, aperture, beta, mode)

    probe = config_at(1.0)  # mode-resolved alpha for the bisection seeds
    ab = probe.alpha * beta
    requirements: dict[str, dict] = {}
    errors: dict[str, str] = {}

    def solve(name: str, target, fn) -> None:
        try:
            requirements[name] = {"target": target, "min_aperture_wl": fn()}
        except DomainError as exc:
            requirements[name] = {"target": target, "min_aperture_wl": None}
            errors[name] = str(exc)

    if args.eta is not None:
        solve(
            "eta",
            args.eta,
            lambda: min_aperture_for_fraction(geometry, args.eta, beta, mode),
        )
    if args.min_span is not None:
        if args.min_span < 0.0:
            errors["min_span"] = f"span requirement must be >= 0, got {args.min_span}"
            requirements["min_span"] = {"target": args.min_span, "min_aperture_wl": None}
        else:
            solve(
                "min_span",
                args.min_span,
                lambda: _bisect_min_aperture(
                    lambda d: nf_limits(config_at(d)).span_wl >= args.min_span,
                    1e-6,
                    max(1.0, ab),
                ),
            )
    if args.min_nbd is not None:
        if args.min_nbd < 1:
            errors["min_nbd"] = f"beamspot requirement must be >= 1, got {args.min_nbd}"
            requirements["min_nbd"] = {"target": args.min_nbd, "min_aperture_wl": None}
        else:
            # Bisect the pre-floor packing value so the count is exact at the
            # returned aperture and one lower just below it.
            solve(
                "min_nbd",
                args.min_nbd,
                lambda: _bisect_min_aperture(
                    lambda d: d / ab + ab / (4.0 * d - 2.0 * ab) - 0.5 >= args.min_nbd,
                    ab,
                    2.0 * ab,
                ),
            )
    if args.min_nsv is not None:
        if args.min_nsv < 1:
            errors["min_nsv"] = f"singular-value requirement must be >= 1, got {args.min_nsv}"
            requirements["min_nsv"] = {"target": args.min_nsv, "min_aperture_wl": None}
        else:
            c = probe.constants
            solve(
                "min_nsv",
                args.min_nsv,
                lambda: _bisect_min_aperture(
                    lambda d: c.kappa * d**c.gamma >= args.min_nsv,
                    1e-6,
                    max(1.0, ab),
                ),
            )

    minima = [r["min_aperture_wl"] for r in requirements.values() if r["min_aperture_wl"]]
    doc = {
        "geometry": geometry.value,
        "mode": mode.value,
        "beta": beta,
        "requirements": requirements,
        "binding_aperture_wl": max(minima) if minima else None,
        "errors": errors,
    }
    _emit_report(doc, args, argv)
    return 1 if errors else 0


def cmd_beamspots(args, parser, argv: list[str]) -> int:
    config = _resolve_config(args, parser)
    plan = fit_beamspots(config)
    edges = plan.beams
    method = "closed-form"
    if args.numeric_edges:
        layout = generate_layout(config.geometry, config.aperture_wl, args.spacing_wl)
        edges = numeric_plan_edges(layout, plan)
        method = "numeric"
    doc = _config_doc(config)
    doc.update(
        {
            "edge_method": method,
            "beam_count": len(plan.beams),
            "covered_from_wl": plan.covered_interval_wl[0],
            "covered_to_wl": plan.covered_interval_wl[1],
            "beams": [
                {
                    "index": k + 1,
                    "focal_wl": beam.focal_wl,
                    "left_wl": beam.left_wl,
                    "right_wl": beam.right_wl,
                    "depth_wl": beam.depth_wl,
                }
                for k, beam in enumerate(edges)
            ],
            "errors": {},
        }
    )
    _emit_report(doc, args, argv)
    if args.emit_curves:
        table = emit_af_curves(config, plan, args.samples, args.spacing_wl)
        header = ["distance_wl"] + [f"beam{k + 1}" for k in range(len(plan.beams))] + ["farfield"]
        rows = np.column_stack([table.distances_wl, table.beam_columns, table.farfield_column])
        _write_csv(args.emit_curves, header, rows, argv)
    return 0


def cmd_svsweep(args, parser, argv: list[str]) -> int:
    geometry = ArrayGeometry(args.geometry)
    beta = _resolve_beta(args)
    mode = Mode(args.mode)
    apertures = _parse_list(args.apertures, parser)
    rows = []
    errors: dict[str, str] = {}
    for aperture in apertures:
        try:
            if args.range_samples is not None:
                config = ApertureConfig(geometry, aperture, beta, mode)
                layout = generate_layout(geometry, aperture, args.spacing_wl)
                channel = build_channel(layout, config, args.range_samples)
                count = sv_spectrum(channel, args.threshold_db).significant_count
            else:
                [(_, count)] = sweep_sv_counts(
                    geometry,
                    [aperture],
                    beta,
                    mode,
                    args.threshold_db,
                    args.spacing_wl,
                )
            rows.append({"aperture_wl": aperture, "sv_count": count})
        except DomainError as exc:
            rows.append({"aperture_wl": aperture, "sv_count": None})
            errors[f"aperture {aperture:g}"] = str(exc)

    doc = {
        "geometry": geometry.value,
        "mode": mode.value,
        "beta": beta,
        "threshold_db": args.threshold_db,
        "spacing_wl": args.spacing_wl,
        "rows": rows,
        "errors": errors,
    }
    if args.fit:
        try:
            fit = fit_power_law(
                [(r["aperture_wl"], r["sv_count"]) for r in rows if r["sv_count"] is not None]
            )
            doc["fit"] = {
                "kappa": fit.kappa,
                "gamma": fit.gamma,
                "residual": fit.residual,
            }
        except DomainError as exc:
            doc["fit"] = None
            errors["fit"] = str(exc)
    _emit_report(doc, args, argv)
    if args.output_csv:
        good = [[r["aperture_wl"], r["sv_count"]] for r in rows if r["sv_count"] is not None]
        _write_csv(args.output_csv, ["aperture_wl", "sv_count"], good, argv)
    return 1 if errors else 0


_FIGURES = ("beamdepth-vs-d", "bdmin-vs-D", "span-vs-D", "nbd-vs-D")


def cmd_curves(args, parser, argv: list[str]) -> int:
    geometries = [ArrayGeometry(g.strip()) for g in args.geometries.split(",") if g.strip()]
    if not geometries:
        parser.error("empty --geometries list")
    beta = _resolve_beta(args)
    mode = Mode(args.mode)

    def value_or_nan(fn) -> float:
        try:
            return float(fn())
        except DomainError:
            return math.nan

    if args.figure == "beamdepth-vs-d":
        if args.apertures is None:
            parser.error("--figure beamdepth-vs-d needs --apertures")
        apertures = _parse_list(args.apertures, parser)
        configs = [
            ApertureConfig(geom, aperture, beta, mode)
            for geom in geometries
            for aperture in apertures
        ]
        if args.d_range is not None:
            distances = _parse_range(args.d_range, parser)
        else:
            d_lo = 0.5 * min(nf_limits(c).d_min_wl for c in configs)
            d_hi = 1.25 * max(nf_limits(c).d_max_wl for c in configs)
            distances = np.geomspace(d_lo, d_hi, 400)
        header = ["distance_wl"] + [
            f"{c.geometry.value}_D{c.aperture_wl:g}" for c in configs
        ]
        rows = [
            [d] + [value_or_nan(lambda c=c: beamdepth(c, d)) for c in configs]
            for d in distances
        ]
    else:
        if args.aperture_range is not None:
            apertures = _parse_range(args.aperture_range, parser)
        else:
            apertures = np.linspace(0.5, 150.0, 300)
        header = ["aperture_wl"] + [g.value for g in geometries]
        per_geometry = {
            "bdmin-vs-D": lambda c: min_beamdepth(c),
            "span-vs-D": lambda c: nf_limits(c).span_wl,
            "nbd-vs-D": lambda c: beamspot_count_closed_form(c),
        }[args.figure]
        rows = [
            [a]
            + [
                value_or_nan(lambda g=g: per_geometry(ApertureConfig(g, a, beta, mode)))
                for g in geometries
            ]
            for a in apertures
        ]

    _write_csv(args.output, header, rows, argv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfarray",
        description="Near-field array sizing metrics, beamspot plans and SV sweeps "
        "(all lengths in carrier wavelengths).",
    )
    parser.add_argument("--version", action="version", version=f"nfarray {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", help="near-field limits, beamdepth minima and counts")
    _add_geometry_args(p)
    _add_output_args(p)

    p = sub.add_parser("size", help="smallest aperture meeting requirements")
    _add_geometry_args(p, with_aperture=False)
    p.add_argument("--eta", type=float, help="fraction of asymptotic resolution, in (0, 1)")
    p.add_argument("--min-span", type=float, help="required near-field span in wavelengths")
    p.add_argument("--min-nbd", type=int, help="required beamspot count")
    p.add_argument("--min-nsv", type=int, help="required significant-singular-value count")
    _add_output_args(p)

    p = sub.add_parser("beamspots", help="-3 dB beamspot plan across the near field")
    _add_geometry_args(p)
    p.add_argument("--numeric-edges", action="store_true", help="re-measure edges on the exact pattern")
    p.add_argument("--spacing-wl", type=float, default=0.5, help="element spacing (default 0.5)")
    p.add_argument("--emit-curves", metavar="PATH", help="write per-beam array-factor curves as CSV")
    p.add_argument("--samples", type=int, default=512, help="curve samples (default 512)")
    _add_output_args(p)

    p = sub.add_parser("svsweep", help="simulated significant-SV counts over apertures")
    _add_geometry_args(p, with_aperture=False)
    p.add_argument("--apertures", required=True, help="comma-separated apertures in wavelengths")
    p.add_argument("--threshold-db", type=float, default=DEFAULT_THRESHOLD_DB)
    p.add_argument("--spacing-wl", type=float, default=0.5, help="element spacing (default 0.5)")
    p.add_argument("--range-samples", type=int, help="fixed range-sample count (skips convergence)")
    p.add_argument("--fit", action="store_true", help="fit a power law to the counts")
    p.add_argument("--output-csv", metavar="PATH", help="write (aperture, count) rows as CSV")
    _add_output_args(p)

    p = sub.add_parser("curves", help="figure-ready CSV datasets")
    p.add_argument("--figure", required=True, choices=_FIGURES)
    p.add_argument(
        "--geometries",
        default=",".join(g.value for g in ArrayGeometry),
        help="comma-separated geometry list (default: all)",
    )
    p.add_argument("--apertures", help="apertures for beamdepth-vs-d, in wavelengths")
    p.add_argument("--d-range", help="distance grid lo:hi:count (beamdepth-vs-d)")
    p.add_argument("--aperture-range", help="aperture grid lo:hi:count")
    p.add_argument("--beta", type=float, help=f"inner-limit ratio (default {DEFAULT_BETA})")
    p.add_argument(
        "--mode",
        choices=[m.value for m in Mode],
        default=Mode.SIMO_MISO.value,
    )
    p.add_argument("--output", required=True, help="CSV path")

    return parser


_HANDLERS = {
    "metrics": cmd_metrics,
    "size": cmd_size,
    "beamspots": cmd_beamspots,
    "svsweep": cmd_svsweep,
    "curves": cmd_curves,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args, parser, argv)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
