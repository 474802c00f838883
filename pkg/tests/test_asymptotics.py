import numpy as np
import pytest

from triwalk import evolution, localization, weaklimit
from triwalk.algebra import normalize_spinor
from triwalk.asymptotics import (
    asymptotic_pdf,
    branch_cross,
    front_operators,
    relative_difference,
    stationary_front_cross,
    stationary_point,
)
from triwalk.errors import DomainError


def rho(k, v, sign):
    return v * k + sign * np.arccos(-2.0 / 3.0 - np.cos(k) / 3.0)


class TestStationaryPoint:
    def test_zero_velocity(self):
        for branch in ("plus", "minus"):
            sp = stationary_point(0.0, branch)
            assert abs(sp.k_star) == pytest.approx(np.pi, abs=1e-14)
            assert abs(sp.rho2_star) == pytest.approx(np.sqrt(2.0) / 4.0, abs=1e-12)

    def test_half_velocity(self):
        sp = stationary_point(0.5, "plus")
        assert abs(sp.k_star) == pytest.approx(np.arccos(1.0 / 3.0), abs=1e-12)

    def test_outside_front(self):
        with pytest.raises(DomainError):
            stationary_point(0.6, "plus")
        with pytest.raises(DomainError):
            stationary_point(-1.0, "minus")

    def test_phase_derivative_vanishes(self):
        rng = np.random.default_rng(31)
        h = 1e-6
        for v in rng.uniform(-0.57, 0.57, size=1000):
            branch = "plus" if rng.random() < 0.5 else "minus"
            sp = stationary_point(v, branch)
            s = 1.0 if branch == "plus" else -1.0
            d1 = (rho(sp.k_star + h, v, s) - rho(sp.k_star - h, v, s)) / (2 * h)
            assert abs(d1) < 1e-6

    def test_curvature_closed_form(self):
        rng = np.random.default_rng(32)
        for v in rng.uniform(-0.57, 0.57, size=1000):
            sp = stationary_point(float(v), "plus")
            closed = np.sqrt(2.0) / 4.0 * np.sqrt(1.0 - 3.0 * v * v) * (1.0 - v * v)
            assert abs(abs(sp.rho2_star) - closed) < 1e-10

    def test_curvature_matches_finite_differences(self):
        rng = np.random.default_rng(33)
        h = 1e-5
        for v in rng.uniform(-0.5, 0.5, size=50):
            for branch, s in (("plus", 1.0), ("minus", -1.0)):
                sp = stationary_point(float(v), branch)
                d2 = (
                    rho(sp.k_star + h, v, s)
                    - 2 * rho(sp.k_star, v, s)
                    + rho(sp.k_star - h, v, s)
                ) / h**2
                assert abs(d2 - sp.rho2_star) < 1e-4


class TestFrontOperators:
    def test_prefactor_scaling(self):
        u2a, _ = front_operators(0, 1024)
        u2b, _ = front_operators(0, 4096)
        ratio = np.linalg.norm(u2b) / np.linalg.norm(u2a)
        assert ratio == pytest.approx(0.5, abs=1e-6)

    def test_zero_outside_guard(self):
        u2, u3 = front_operators(1000, 1024)
        assert np.abs(u2).max() == 0.0 and np.abs(u3).max() == 0.0

    def test_needs_positive_time(self):
        with pytest.raises(DomainError):
            front_operators(0, 0)

    def test_branches_are_conjugate(self):
        rng = np.random.default_rng(34)
        for _ in range(20):
            t = int(rng.integers(64, 4096))
            n = int(rng.integers(-t // 2, t // 2))
            u2, u3 = front_operators(n, t)
            assert np.abs(u3 - u2.conj()).max() < 1e-14

    def test_mirror_symmetry(self):
        swap = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=float)
        rng = np.random.default_rng(35)
        for _ in range(20):
            t = int(rng.integers(64, 4096))
            n = int(rng.integers(1, t // 2))
            u2p, _ = front_operators(n, t)
            u2m, _ = front_operators(-n, t)
            assert np.abs(swap @ u2m @ swap - u2p).max() < 1e-14


class TestAsymptoticPdf:
    def test_far_field_equals_stationary(self):
        psi = normalize_spinor([0.6, 0.0, 0.8j])
        for n in (3000, -2500):
            assert asymptotic_pdf(psi, n, 4096) == localization.stationary_pdf(psi, n)

    def test_needs_positive_time(self):
        with pytest.raises(DomainError):
            asymptotic_pdf([1, 0, 0], 0, 0)


class TestRelativeDifference:
    def test_equal_values(self):
        assert relative_difference(0.3, 0.3) == 0.0

    def test_maximal_disagreement(self):
        assert relative_difference(0.7, 0.0) == 2.0

    def test_both_zero(self):
        assert relative_difference(0.0, 0.0) == 0.0

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            relative_difference(-0.1, 0.2)


class TestCrossTerms:
    def test_vanishing_localization_kills_cross_term(self):
        psi = normalize_spinor([1, -2, 1])
        rng = np.random.default_rng(36)
        for _ in range(10):
            t = int(rng.integers(16, 2048))
            n = int(rng.integers(-t // 2, t // 2))
            assert abs(stationary_front_cross(psi, n, t)) < 1e-12

    def test_cross_terms_are_real_valued(self, random_spinors):
        for psi in random_spinors(5, seed=37):
            q1 = stationary_front_cross(psi, 3, 500)
            qa = branch_cross(psi, 3, 500)
            assert isinstance(q1, float) and isinstance(qa, float)

    def test_branch_cross_mirror_symmetry(self, random_spinors):
        swap = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=float)
        rng = np.random.default_rng(38)
        for psi in random_spinors(5, seed=38):
            mirrored = swap @ psi
            for _ in range(5):
                t = int(rng.integers(64, 2048))
                n = int(rng.integers(0, t // 2))
                assert branch_cross(psi, n, t) == pytest.approx(
                    branch_cross(mirrored, -n, t), abs=1e-10
                )

    def test_stationary_front_cross_envelope_is_sqrt_t(self):
        from triwalk.analysis import SeriesRecord, fit_envelope

        psi = normalize_spinor([0, 1j, 1])
        ts = np.arange(256, 4096)
        vals = np.array([stationary_front_cross(psi, 0, int(t)) for t in ts])
        fit = fit_envelope(SeriesRecord("q1", "t", ts, {"deviation": vals}))
        assert fit.exponent == pytest.approx(-0.5, abs=0.3)

    def test_branch_cross_averages_to_zero(self):
        # 64-step window mean is far below the envelope of the values
        psi = normalize_spinor([0, 1j, 1])
        ts = np.arange(2048, 2112)
        vals = np.array([branch_cross(psi, 200, int(t)) for t in ts])
        assert abs(vals.mean()) < 0.1 * np.abs(vals).max()


def test_decomposition_audit(random_spinors):
    # the residual of the four-term split decays faster than every
    # retained term as t grows
    spinors = [
        normalize_spinor([0, 1j, 1]),
        normalize_spinor([1, 0, 0]),
        random_spinors(1, seed=39)[0],
    ]
    ts = (256, 1024, 4096)
    for psi in spinors:
        meds = []
        for t in ts:
            slc = evolution.pdf(evolution.evolve(psi, t))
            center = int(round(0.2 * t))
            resid = []
            for n in range(center - 3, center + 4):
                model = (
                    localization.stationary_pdf(psi, n)
                    + weaklimit.smooth_pdf(psi, n, t)
                    + stationary_front_cross(psi, n, t)
                    + branch_cross(psi, n, t)
                )
                resid.append(abs(slc.prob(n) - model))
            meds.append(np.median(resid))
        slope = np.polyfit(np.log(ts), np.log(meds), 1)[0]
        assert slope < -1.2, f"audit residual decays too slowly: {slope}"
        assert meds[-1] < meds[0]
