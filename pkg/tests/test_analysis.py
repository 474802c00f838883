import numpy as np
import pytest

from triwalk import tables
from triwalk.algebra import normalize_spinor
from triwalk.analysis import (
    ASYMMETRY_DEMO_SPINORS,
    SeriesRecord,
    fit_envelope,
    run_convergence,
    run_localization_scan,
    run_moment_sweep,
    run_pdf_comparison,
    run_smoothed_comparison,
)
from triwalk.errors import DomainError, EnvelopeFitError, ResourceLimitError


class TestSeriesRecord:
    def test_rejects_non_monotone_abscissa(self):
        with pytest.raises(DomainError):
            SeriesRecord("x", "t", np.array([1, 1, 2]), {})

    def test_rejects_mismatched_columns(self):
        with pytest.raises(DomainError):
            SeriesRecord("x", "t", np.array([1, 2]), {"y": np.array([1.0])})


class TestPdfComparison:
    def test_zero_steps(self):
        rec = run_pdf_comparison(normalize_spinor([0, 1j, 1]), 0)
        assert list(rec.abscissa) == [0]
        assert rec.column("relative_difference")[0] == 0.0
        assert rec.column("simulated")[0] == pytest.approx(1.0, abs=1e-12)

    def test_symmetric_start_symmetric_table(self):
        rec = run_pdf_comparison(normalize_spinor([1, -2, 1]), 128)
        sim = rec.column("simulated")
        assert np.abs(sim - sim[::-1]).max() < 1e-12

    def test_relative_difference_range(self):
        rec = run_pdf_comparison(normalize_spinor([0.2, 0.5j, -1]), 96)
        eps = rec.column("relative_difference")
        assert eps.min() >= 0.0 and eps.max() <= 2.0

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            run_pdf_comparison([1, 0, 0], 2**15)


class TestSmoothedComparison:
    def test_prediction_includes_stationary_mass(self):
        psi = normalize_spinor([0, 1j, 1])
        rec = run_smoothed_comparison(psi, 512, window=16)
        i0 = np.nonzero(rec.abscissa == 0)[0][0]
        assert rec.column("predicted")[i0] > 10 * rec.column("front_density")[i0]

    def test_mid_front_agreement(self):
        psi = normalize_spinor([0, 1j, 1])
        rec = run_smoothed_comparison(psi, 512, window=16)
        n = rec.abscissa
        band = (np.abs(n) >= 16) & (np.abs(n) <= int(0.5 * 512 / np.sqrt(3)))
        assert np.median(rec.column("relative_difference")[band]) < 0.05


class TestLocalizationScan:
    def test_small_scale_scan(self):
        records = run_localization_scan(
            [normalize_spinor([10, 0, 1])], t_max=512, n_max=4
        )
        (rec,) = records
        p1 = rec.column("p1_predicted")
        est = rec.column("localization_estimate")
        rel = rec.column("relative_error")
        sites = list(rec.abscissa)
        for n in (-2, -1, 0, 1, 2):
            assert rel[sites.index(n)] < 0.01
        # strong one-sided asymmetry, with the correct sign
        for n in (1, 2, 3, 4):
            ip, im = sites.index(n), sites.index(-n)
            assert p1[ip] != p1[im]
            assert np.sign(est[ip] - est[im]) == np.sign(p1[ip] - p1[im])
        assert rec.meta["better_estimator"] in (
            "filtered_amplitude",
            "corrected_time_average",
            "instantaneous",
        )
        assert rec.meta["unitarity_defect"] < 1e-12

    def test_vanishing_direction_prediction_row(self):
        (rec,) = run_localization_scan(
            [normalize_spinor([1, -2, 1])], t_max=256, n_max=3
        )
        assert np.abs(rec.column("p1_predicted")).max() < 1e-15

    def test_window_validation(self):
        with pytest.raises(DomainError):
            run_localization_scan([normalize_spinor([1, 0, 0])], t_max=64, window=65)


class TestFitEnvelope:
    def test_recovers_synthetic_exponent(self):
        t = np.arange(200, 4000)
        y = t**-1.5 * np.sin(0.7 * t)
        rec = SeriesRecord("synthetic", "t", t, {"deviation": y})
        fit = fit_envelope(rec)
        assert fit.exponent == pytest.approx(-1.5, abs=0.05)
        assert fit.r_squared > 0.99
        assert fit.n_points >= 8

    def test_too_few_maxima(self):
        t = np.arange(10, 200)
        rec = SeriesRecord("mono", "t", t, {"deviation": 1.0 / t})
        with pytest.raises(EnvelopeFitError):
            fit_envelope(rec)


class TestConvergence:
    def test_columns_and_meta(self):
        psi = normalize_spinor([0, 1j, 1])
        rec = run_convergence(psi, site=0, t_min=64, t_max=512)
        assert rec.meta["site"] == 0
        dev = rec.column("simulated") - rec.column("smooth")
        assert np.abs(dev - rec.column("deviation")).max() == 0.0

    def test_validation(self):
        with pytest.raises(DomainError):
            run_convergence([1, 0, 0], site=0, t_min=100, t_max=50)


class TestMomentSweep:
    def test_symmetric_start_zero_drift(self):
        rec = run_moment_sweep(normalize_spinor([1, 0, 1]), [128, 512])
        assert np.abs(rec.column("n1_simulated")).max() < 1e-10

    def test_time_zero_rejected(self):
        with pytest.raises(DomainError):
            run_moment_sweep([1, 0, 0], [0, 16])

    def test_spread_rate_approaches_prediction(self):
        # decreasing trend of the relative difference, window-mean sense
        rec = run_moment_sweep(normalize_spinor([0, 1j, 1]), [256, 512, 1024, 2048, 4096])
        rel = rec.column("n2_relative_difference")
        assert np.mean(rel[:2]) > np.mean(rel[-2:])
        assert rel[-1] < rel[0]
        assert rel[-1] < 0.01


def test_demo_spinors_are_normalized():
    for psi in ASYMMETRY_DEMO_SPINORS:
        assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-14)


def test_drivers_are_deterministic():
    psi = normalize_spinor([0.3, -0.1j, 0.9])
    a = run_pdf_comparison(psi, 64)
    b = run_pdf_comparison(psi, 64)
    assert tables.records_to_csv([a], {}) == tables.records_to_csv([b], {})
