"""End-to-end CLI tests: reports, sizing, datasets, unit round-trips."""

import json
import math

import pytest

from nfarray.cli import main


def run_cli(capsys, args, expect_rc=0):
    rc = main(args)
    captured = capsys.readouterr()
    assert rc == expect_rc, captured.err or captured.out
    return captured.out


def machine(capsys, args, expect_rc=0):
    return json.loads(run_cli(capsys, args + ["--format", "machine"], expect_rc))


# -- metrics ---------------------------------------------------------------


def test_metrics_reference_report(capsys):
    doc = machine(capsys, ["metrics", "--geometry", "ula", "--aperture-wl", "35"])
    assert doc["geometry"] == "ula"
    assert doc["mode"] == "simo-miso"
    assert doc["beta"] == 1.2
    assert doc["fraunhofer_wl"] == 2450.0
    assert doc["d_min_wl"] == 42.0
    assert doc["d_max_wl"] == pytest.approx(352.416571, abs=1e-6)
    assert doc["span_wl"] == pytest.approx(310.416571, abs=1e-6)
    assert doc["has_nf_region"] is True
    assert doc["min_beamdepth_wl"] == pytest.approx(10.155115, abs=1e-6)
    assert doc["asymptotic_beamdepth_wl"] == pytest.approx(10.01088, abs=1e-6)
    assert doc["beamspot_count"] == 3
    assert doc["sv_count_power_law"] == 4
    assert doc["errors"] == {}


def test_metrics_table_format(capsys):
    out = run_cli(capsys, ["metrics", "--geometry", "ula", "--aperture-wl", "35"])
    assert "beamspot_count" in out
    assert "2450" in out
    # empty errors section is omitted from the table
    assert "errors" not in out


def test_metrics_domain_errors_exit_nonzero(capsys):
    doc = machine(
        capsys, ["metrics", "--geometry", "ura", "--aperture-wl", "4"], expect_rc=1
    )
    assert doc["beamspot_count"] is None
    assert "alpha * beta" in doc["errors"]["beamspot_count"]
    assert doc["min_beamdepth_wl"] is None
    # the rest of the report still computes
    assert doc["fraunhofer_wl"] == 32.0
    assert doc["has_nf_region"] is False


def test_metrics_rejects_conflicting_units(capsys):
    with pytest.raises(SystemExit) as exc:
        main(
            [
                "metrics",
                "--geometry",
                "ula",
                "--aperture-wl",
                "35",
                "--aperture-m",
                "0.35",
                "--carrier-ghz",
                "29.9792458",
            ]
        )
    assert exc.value.code == 2


def test_metrics_requires_carrier_with_meters(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["metrics", "--geometry", "ula", "--aperture-m", "0.35"])
    assert exc.value.code == 2


def test_metrics_unit_round_trip_stdout(capsys):
    # 0.35 m at 29.9792458 GHz is exactly 35 wavelengths (lambda = 1 cm)
    by_wl = run_cli(capsys, ["metrics", "--geometry", "ula", "--aperture-wl", "35"])
    by_m = run_cli(
        capsys,
        [
            "metrics",
            "--geometry",
            "ula",
            "--aperture-m",
            "0.35",
            "--carrier-ghz",
            "29.9792458",
        ],
    )
    assert by_wl == by_m


def test_metrics_output_file_byte_identity(capsys, tmp_path):
    a = tmp_path / "wl.json"
    b = tmp_path / "m.json"
    run_cli(
        capsys,
        [
            "metrics", "--geometry", "uca", "--aperture-wl", "20",
            "--format", "machine", "--output", str(a),
        ],
    )
    run_cli(
        capsys,
        [
            "metrics", "--geometry", "uca",
            "--aperture-m", "0.2", "--carrier-ghz", "29.9792458",
            "--format", "machine", "--output", str(b),
        ],
    )
    assert a.read_bytes() == b.read_bytes()
    # manifests exist but are excluded from byte-identity
    manifest = json.loads((tmp_path / "wl.json.manifest.json").read_text())
    assert manifest["tool"] == "nfarray"
    assert manifest["path"] == str(a)
    assert manifest["format"] == "machine"
    assert "--aperture-wl" in manifest["command"]


# -- size ------------------------------------------------------------------


def test_size_eta_reference(capsys):
    doc = machine(capsys, ["size", "--geometry", "ura", "--eta", "0.9"])
    got = doc["requirements"]["eta"]["min_aperture_wl"]
    assert got == pytest.approx(17.8866, abs=1e-4)
    assert doc["binding_aperture_wl"] == got


def test_size_min_nbd_boundary(capsys):
    doc = machine(capsys, ["size", "--geometry", "ula", "--min-nbd", "3"])
    d_hat = doc["requirements"]["min_nbd"]["min_aperture_wl"]

    from nfarray import ApertureConfig, ArrayGeometry, beamspot_count_closed_form

    at = beamspot_count_closed_form(ApertureConfig(ArrayGeometry.ULA, d_hat))
    below = beamspot_count_closed_form(ApertureConfig(ArrayGeometry.ULA, d_hat - 0.01))
    assert at == 3
    assert below == 2


def test_size_min_nsv_closed_form(capsys):
    doc = machine(capsys, ["size", "--geometry", "ula", "--min-nsv", "7"])
    got = doc["requirements"]["min_nsv"]["min_aperture_wl"]
    assert got == pytest.approx((7.0 / 0.434) ** (1.0 / 0.676), abs=2e-4)


def test_size_binding_is_max(capsys):
    doc = machine(capsys, ["size", "--geometry", "ula", "--eta", "0.9", "--min-nbd", "3"])
    minima = [r["min_aperture_wl"] for r in doc["requirements"].values()]
    assert doc["binding_aperture_wl"] == max(minima)
    assert len(minima) == 2


def test_size_requires_a_requirement(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["size", "--geometry", "ula"])
    assert exc.value.code == 2


def test_size_unreachable_eta(capsys):
    doc = machine(capsys, ["size", "--geometry", "ula", "--eta", "1.5"], expect_rc=1)
    assert doc["requirements"]["eta"]["min_aperture_wl"] is None
    assert "eta" in doc["errors"]


# -- beamspots ---------------------------------------------------------------


def test_beamspots_reference_plan(capsys):
    doc = machine(capsys, ["beamspots", "--geometry", "ula", "--aperture-wl", "35"])
    assert doc["beam_count"] == 4
    assert doc["edge_method"] == "closed-form"
    assert doc["covered_from_wl"] == 42.0
    assert doc["covered_to_wl"] == pytest.approx(253.378378, abs=1e-5)
    foci = [b["focal_wl"] for b in doc["beams"]]
    assert foci[0] == 42.0
    assert foci == pytest.approx([42.0, 55.1437489, 80.2612038, 147.400931], abs=1e-5)
    # adjacent beams chain exactly: right edge of k is left edge of k+1
    for prev, nxt in zip(doc["beams"], doc["beams"][1:]):
        assert prev["right_wl"] == nxt["left_wl"]
    assert doc["beams"][0]["index"] == 1


def test_beamspots_single_beam_at_boundary(capsys):
    # aperture exactly alpha*beta packs exactly one beam
    doc = machine(capsys, ["beamspots", "--geometry", "ula", "--aperture-wl", "8.3424"])
    assert doc["beam_count"] == 1


def test_beamspots_domain_gate(capsys):
    rc = main(["beamspots", "--geometry", "ula", "--aperture-wl", "5"])
    captured = capsys.readouterr()
    assert rc == 1
    assert "alpha * beta" in captured.err


def test_beamspots_numeric_edges_close_to_closed_form(capsys):
    closed = machine(capsys, ["beamspots", "--geometry", "ula", "--aperture-wl", "35"])
    numeric = machine(
        capsys,
        ["beamspots", "--geometry", "ula", "--aperture-wl", "35", "--numeric-edges"],
    )
    assert numeric["edge_method"] == "numeric"
    assert numeric["beam_count"] == closed["beam_count"]
    for a, b in zip(numeric["beams"], closed["beams"]):
        assert abs(a["left_wl"] - b["left_wl"]) / b["left_wl"] < 0.03
        assert abs(a["right_wl"] - b["right_wl"]) / b["right_wl"] < 0.03


def test_beamspots_curve_file(capsys, tmp_path):
    path = tmp_path / "curves.csv"
    out = run_cli(
        capsys,
        [
            "beamspots", "--geometry", "ula", "--aperture-wl", "35",
            "--emit-curves", str(path), "--samples", "64",
        ],
    )
    assert f"wrote {path} (64 rows)" in out
    lines = path.read_text().splitlines()
    assert lines[0] == "distance_wl,beam1,beam2,beam3,beam4,farfield"
    assert len(lines) == 65
    first = [float(x) for x in lines[1].split(",")]
    assert len(first) == 6
    manifest = json.loads((tmp_path / "curves.csv.manifest.json").read_text())
    assert manifest["format"] == "csv"


def test_beamspots_curve_file_unit_round_trip(capsys, tmp_path):
    a = tmp_path / "wl.csv"
    b = tmp_path / "m.csv"
    run_cli(
        capsys,
        [
            "beamspots", "--geometry", "ula", "--aperture-wl", "35",
            "--emit-curves", str(a), "--samples", "32",
        ],
    )
    run_cli(
        capsys,
        [
            "beamspots", "--geometry", "ula",
            "--aperture-m", "0.35", "--carrier-ghz", "29.9792458",
            "--emit-curves", str(b), "--samples", "32",
        ],
    )
    assert a.read_bytes() == b.read_bytes()


# -- svsweep -----------------------------------------------------------------


def test_svsweep_reference_counts(capsys):
    doc = machine(capsys, ["svsweep", "--geometry", "ula", "--apertures", "32,64"])
    assert doc["rows"] == [
        {"aperture_wl": 32.0, "sv_count": 4},
        {"aperture_wl": 64.0, "sv_count": 7},
    ]
    assert doc["threshold_db"] == -20.0


def test_svsweep_bad_row_reported_without_aborting(capsys):
    doc = machine(
        capsys, ["svsweep", "--geometry", "ula", "--apertures", "3,32"], expect_rc=1
    )
    assert doc["rows"][0]["sv_count"] is None
    assert doc["rows"][1]["sv_count"] == 4
    assert "aperture 3" in doc["errors"]
    # table rendering shows the missing count as a dash
    out = run_cli(capsys, ["svsweep", "--geometry", "ula", "--apertures", "3,32"], expect_rc=1)
    assert "sv_count=-" in out


def test_svsweep_fit_needs_enough_points(capsys):
    doc = machine(
        capsys,
        ["svsweep", "--geometry", "ula", "--apertures", "32,64", "--fit"],
        expect_rc=1,
    )
    assert doc["fit"] is None
    assert "fit" in doc["errors"]


def test_svsweep_empty_aperture_list(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["svsweep", "--geometry", "ula", "--apertures", ","])
    assert exc.value.code == 2


def test_svsweep_output_csv(capsys, tmp_path):
    path = tmp_path / "counts.csv"
    run_cli(
        capsys,
        [
            "svsweep", "--geometry", "ula", "--apertures", "16,32",
            "--range-samples", "256", "--output-csv", str(path),
        ],
    )
    lines = path.read_text().splitlines()
    assert lines[0] == "aperture_wl,sv_count"
    assert len(lines) == 3
    assert lines[1].startswith("16,")


# -- curves ------------------------------------------------------------------


def test_curves_bdmin_asymptote(capsys, tmp_path):
    path = tmp_path / "bdmin.csv"
    run_cli(
        capsys,
        [
            "curves", "--figure", "bdmin-vs-D", "--geometries", "ula",
            "--aperture-range", "2000:2100:3", "--output", str(path),
        ],
    )
    lines = path.read_text().splitlines()
    assert lines[0] == "aperture_wl,ula"
    for line in lines[1:]:
        value = float(line.split(",")[1])
        assert math.isclose(value, 10.01088, rel_tol=3e-3)


def test_curves_span_reference_value(capsys, tmp_path):
    path = tmp_path / "span.csv"
    run_cli(
        capsys,
        [
            "curves", "--figure", "span-vs-D", "--geometries", "ula",
            "--aperture-range", "30:31:2", "--output", str(path),
        ],
    )
    first = path.read_text().splitlines()[1]
    assert float(first.split(",")[1]) == pytest.approx(222.918297, abs=1e-5)


def test_curves_nbd_nan_below_packing_domain(capsys, tmp_path):
    path = tmp_path / "nbd.csv"
    run_cli(
        capsys,
        [
            "curves", "--figure", "nbd-vs-D", "--geometries", "ula",
            "--aperture-range", "5:20:4", "--output", str(path),
        ],
    )
    rows = [line.split(",") for line in path.read_text().splitlines()[1:]]
    assert rows[0][1] == "nan"  # D = 5 is below alpha*beta
    assert [r[1] for r in rows[1:]] == ["1", "1", "2"]


def test_curves_beamdepth_columns_diverge_at_their_own_dmax(capsys, tmp_path):
    path = tmp_path / "bd.csv"
    run_cli(
        capsys,
        [
            "curves", "--figure", "beamdepth-vs-d", "--geometries", "ula",
            "--apertures", "30,60", "--d-range", "100:1200:3",
            "--output", str(path),
        ],
    )
    lines = path.read_text().splitlines()
    assert lines[0] == "distance_wl,ula_D30,ula_D60"
    rows = [line.split(",") for line in lines[1:]]
    # d_max is 258.9 for D=30 and 1035.7 for D=60
    assert float(rows[0][1]) == pytest.approx(90.7869104, abs=1e-5)
    assert rows[1][1] == "nan" and rows[2][1] == "nan"
    assert float(rows[1][2]) > 0.0
    assert rows[2][2] == "nan"


def test_curves_rejects_empty_geometry_list(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(
            [
                "curves", "--figure", "span-vs-D", "--geometries", ",",
                "--output", str(tmp_path / "x.csv"),
            ]
        )
    assert exc.value.code == 2


# -- global flags --------------------------------------------------------------


def test_beta_env_override(capsys, monkeypatch):
    monkeypatch.setenv("NFARRAY_BETA", "1.5")
    doc = machine(capsys, ["metrics", "--geometry", "ula", "--aperture-wl", "35"])
    assert doc["beta"] == 1.5
    assert doc["d_min_wl"] == pytest.approx(52.5)


def test_beta_flag_wins_over_env(capsys, monkeypatch):
    monkeypatch.setenv("NFARRAY_BETA", "1.5")
    doc = machine(
        capsys, ["metrics", "--geometry", "ula", "--aperture-wl", "35", "--beta", "1.3"]
    )
    assert doc["beta"] == 1.3


def test_beta_env_rejects_garbage(capsys, monkeypatch):
    monkeypatch.setenv("NFARRAY_BETA", "fast")
    rc = main(["metrics", "--geometry", "ula", "--aperture-wl", "35"])
    captured = capsys.readouterr()
    assert rc == 1
    assert "NFARRAY_BETA" in captured.err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "nfarray" in capsys.readouterr().out
