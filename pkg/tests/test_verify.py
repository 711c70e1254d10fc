import json
import math

import numpy as np
import pytest

from hexdrop import (
    CellGeometry,
    CellShape,
    DensityCurve,
    VariateStream,
    histogram_compare,
    ks_test,
    load_preset,
    marginal_x_pdf,
    point_in_shape,
    run_drop,
    run_verification,
    sample_points,
    shadowed_cdf,
    spatial_chi_square,
)
from hexdrop.verify import VerifyReport, equal_area_bin_counts, write_samples_csv

from conftest import ALL_SHAPES, PRESET_CASES, preset_model


def _macro():
    preset = load_preset("urban-macro")
    return CellGeometry(CellShape.HEXAGON, 1000.0), preset.pathloss_params()


# ----------------------------------------------------------------- run_drop


def test_run_drop_columns_consistent():
    geom, pl = _macro()
    t = run_drop(geom, pl, 5000, seed=1)
    assert len(t) == 5000
    assert np.allclose(t.r, np.hypot(t.x, t.y))
    assert np.allclose(t.lp, t.w + t.psi)
    assert (t.r <= geom.side).all()
    assert point_in_shape(geom, np.column_stack([t.x, t.y])).all()
    # unbiased shadowing
    sig = pl.sigma_psi
    assert abs(t.psi.mean()) < 3.0 * sig / math.sqrt(len(t))


def test_run_drop_deterministic():
    geom, pl = _macro()
    a = run_drop(geom, pl, 2000, seed=7)
    b = run_drop(geom, pl, 2000, seed=7)
    for col in ("x", "y", "r", "w", "psi", "lp"):
        assert np.array_equal(getattr(a, col), getattr(b, col))
    c = run_drop(geom, pl, 2000, seed=8)
    assert not np.array_equal(a.lp, c.lp)


def test_run_drop_rejects_empty():
    geom, pl = _macro()
    with pytest.raises(ValueError):
        run_drop(geom, pl, 0, seed=0)


def test_samples_csv_bytes_deterministic(tmp_path):
    geom, pl = _macro()
    t = run_drop(geom, pl, 100, seed=3)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_samples_csv(p1, t)
    write_samples_csv(p2, run_drop(geom, pl, 100, seed=3))
    assert p1.read_bytes() == p2.read_bytes()
    header = p1.read_text(encoding="utf-8").splitlines()[0]
    assert header == "x_m,y_m,r_m,w_db,psi_db,lp_db"


# ------------------------------------------------------------------ KS test


def test_ks_against_known_cdf():
    u = VariateStream(40).uniforms(10_000)
    res = ks_test(u, lambda v: np.clip(v, 0.0, 1.0))
    assert res.critical == pytest.approx(1.628 / 100.0, rel=1e-12)
    assert res.passed

    shifted = ks_test(u + 0.1, lambda v: np.clip(v, 0.0, 1.0))
    assert not shifted.passed
    assert shifted.statistic > 5.0 * shifted.critical


def test_ks_rejects_empty():
    with pytest.raises(ValueError):
        ks_test(np.array([]), lambda v: v)


# ------------------------------------------------------------- spatial test


def test_equal_area_bins_cover_all_points():
    geom = CellGeometry(CellShape.HEXAGON, 1.0)
    pts = sample_points(geom, VariateStream(2), 5000)
    counts = equal_area_bin_counts(geom, pts)
    assert counts.sum() == 5000
    assert counts.size == 96


@pytest.mark.parametrize("shape", ALL_SHAPES)
def test_spatial_chi_square_accepts_uniform(shape):
    geom = CellGeometry(shape, 1.0)
    pts = sample_points(geom, VariateStream(100), 100_000)
    res = spatial_chi_square(geom, pts)
    assert res.bins == 96
    assert res.passed, res


def test_spatial_chi_square_rejects_zeroed_y():
    geom = CellGeometry(CellShape.HEXAGON, 1.0)
    pts = sample_points(geom, VariateStream(100), 100_000)
    pts[:, 1] = 0.0
    res = spatial_chi_square(geom, pts)
    assert not res.passed
    assert res.statistic > 10.0 * res.critical


# -------------------------------------------------------- histogram compare


def test_histogram_against_marginal():
    # 18000 samples over the unit hexagon leaves ~450 per plateau bin,
    # enough for the 3-sigma band to be tight
    geom = CellGeometry(CellShape.HEXAGON, 1.0)
    pts = sample_points(geom, VariateStream(55), 18_000)
    report = histogram_compare(
        pts[:, 0], lambda x: marginal_x_pdf(geom, x), bins=40, lo=-1.0, hi=1.0
    )
    assert report.passed
    assert report.flagged.sum() == 0
    # central plateau of the x marginal sits at 2/(3L)
    mid = np.abs(0.5 * (report.edges[:-1] + report.edges[1:])) < 0.5
    width = report.edges[1] - report.edges[0]
    plateau = report.expected[mid] / (len(pts) * width)
    assert np.allclose(plateau, 2.0 / 3.0, rtol=1e-9)


def test_histogram_empty_edge_bins_unflagged():
    geom = CellGeometry(CellShape.HEXAGON, 1.0)
    pts = sample_points(geom, VariateStream(56), 2000)
    report = histogram_compare(
        pts[:, 0], lambda x: marginal_x_pdf(geom, x), bins=30, lo=-1.5, hi=1.5
    )
    outside = (report.edges[1:] <= -1.0) | (report.edges[:-1] >= 1.0)
    assert (report.observed[outside] == 0).all()
    assert not report.flagged[outside].any()


def test_histogram_needs_ten_bins():
    with pytest.raises(ValueError):
        histogram_compare(np.zeros(10), lambda x: x, bins=5)


def test_histogram_flags_wrong_density():
    geom = CellGeometry(CellShape.HEXAGON, 1.0)
    pts = sample_points(geom, VariateStream(57), 18_000)
    wrong = lambda x: np.full_like(np.asarray(x, dtype=float), 0.5)  # uniform on [-1, 1]
    report = histogram_compare(pts[:, 0], wrong, bins=40, lo=-1.0, hi=1.0)
    assert not report.passed


# ------------------------------------------------------------ density curve


def test_density_curve_invariants():
    l = np.linspace(0.0, 10.0, 11)
    with pytest.raises(ValueError):
        DensityCurve(abscissa=l[::-1], density=np.ones(11), label="x", fingerprint="y")
    with pytest.raises(ValueError):
        DensityCurve(abscissa=l, density=-np.ones(11), label="x", fingerprint="y")
    curve = DensityCurve(abscissa=l, density=np.full(11, 0.1), label="x", fingerprint="y")
    assert curve.trapezoid_mass() == pytest.approx(1.0, rel=1e-12)


# ------------------------------------------------------------- verification


def test_verify_report_json_round_trip(tmp_path):
    report = VerifyReport(
        preset="urban-macro",
        shape="hexagon",
        side_m=1000.0,
        count=100,
        seed=0,
        ks_statistic=0.01,
        ks_critical=0.02,
        chi2_statistic=90.0,
        chi2_bins=96,
        chi2_critical=143.3,
        passed=True,
    )
    path = tmp_path / "r.json"
    report.write(path)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["pass"] is True
    assert data["generator"] == "numpy-pcg64"
    assert data["chi2_bins"] == 96
    assert data["preset"] == "urban-macro"


@pytest.mark.parametrize("name,side", PRESET_CASES)
@pytest.mark.parametrize("shape", ALL_SHAPES)
def test_verification_passes_for_all_presets_and_shapes(name, side, shape):
    geom = CellGeometry(shape, side)
    model = preset_model(name, side)
    report, table = run_verification(geom, model, name, count=10_000, seed=0)
    assert report.passed, report
    assert len(table) == 10_000
    assert report.ks_statistic < report.ks_critical
    assert report.chi2_statistic < report.chi2_critical


def test_seed_sweep_false_rejection_rate():
    # KS at the 1% level is expected to reject about one seed in a hundred
    geom = CellGeometry(CellShape.HEXAGON, 1000.0)
    model = preset_model("urban-macro", 1000.0)
    passes = 0
    for seed in range(100):
        table = run_drop(geom, model.pathloss, 10_000, seed=seed)
        if ks_test(table.lp, lambda v: shadowed_cdf(model, v)).passed:
            passes += 1
    assert passes >= 95
