import numpy as np
import pytest

from triwalk.algebra import grover_coin, normalize_spinor
from triwalk.errors import DegeneracyError, DomainError
from triwalk.evolution import evolve
from triwalk.spectral import (
    coin_power,
    eigensystem,
    inverse_transform,
    line_state,
    momentum_coin,
    momentum_grid,
)


class TestMomentumCoin:
    def test_k_zero_is_grover_coin(self):
        assert np.abs(momentum_coin(0.0).matrix - grover_coin()).max() < 1e-15

    def test_k_pi_entry(self):
        mc = momentum_coin(np.pi)
        assert mc.matrix[0, 0] == pytest.approx(1.0 / 3.0, abs=1e-15)
        assert mc.kappa == pytest.approx(-1.0, abs=1e-15)

    def test_unitarity_many_wavenumbers(self):
        rng = np.random.default_rng(1)
        eye = np.eye(3)
        for k in rng.uniform(-np.pi, np.pi, size=1000):
            c = momentum_coin(k).matrix
            assert np.abs(c.conj().T @ c - eye).max() < 1e-13

    def test_unit_determinant_modulus(self):
        for k in (0.3, -2.0, 3.0):
            assert abs(abs(np.linalg.det(momentum_coin(k).matrix)) - 1.0) < 1e-12

    def test_non_finite_k(self):
        with pytest.raises(DomainError):
            momentum_coin(np.nan)


class TestEigensystem:
    def test_omega_at_pi(self):
        es = eigensystem(np.pi)
        assert es.omega == pytest.approx(np.arccos(-1.0 / 3.0), abs=1e-14)

    def test_dispersion_relation(self):
        rng = np.random.default_rng(2)
        for k in rng.uniform(-np.pi, np.pi, size=500):
            if abs(k) < 1e-3:
                continue
            es = eigensystem(k)
            assert abs(np.cos(es.omega) + 2.0 / 3.0 + np.cos(k) / 3.0) < 1e-12

    def test_unit_modulus_eigenvalues(self):
        es = eigensystem(1.1)
        for lam in (es.lambda1, es.lambda2, es.lambda3):
            assert abs(abs(lam) - 1.0) < 1e-12

    def test_completeness_and_idempotence(self):
        rng = np.random.default_rng(3)
        eye = np.eye(3)
        for k in rng.uniform(-np.pi, np.pi, size=200):
            if abs(k) < 1e-3:
                continue
            es = eigensystem(k)
            ms = (es.m1, es.m2, es.m3)
            assert np.abs(ms[0] + ms[1] + ms[2] - eye).max() < 1e-10
            for i, mi in enumerate(ms):
                for j, mj in enumerate(ms):
                    expected = mi if i == j else 0.0
                    assert np.abs(mi @ mj - expected).max() < 1e-9

    def test_reconstructs_coin(self):
        rng = np.random.default_rng(4)
        for k in rng.uniform(-np.pi, np.pi, size=100):
            if abs(k) < 1e-3:
                continue
            es = eigensystem(k)
            rebuilt = es.m1 + es.lambda2 * es.m2 + es.lambda3 * es.m3
            assert np.abs(rebuilt - momentum_coin(k).matrix).max() < 1e-10

    def test_eigenvector_residuals(self):
        rng = np.random.default_rng(5)
        for k in rng.uniform(-np.pi, np.pi, size=1000):
            if abs(k) < 1e-3:
                continue
            es = eigensystem(k)
            c = momentum_coin(k).matrix
            for lam, m in ((es.lambda1, es.m1), (es.lambda2, es.m2), (es.lambda3, es.m3)):
                v = m[:, np.argmax(np.abs(m).sum(axis=0))]
                assert np.linalg.norm(c @ v - lam * v) < 1e-10

    def test_degenerate_points_raise(self):
        for k in (0.0, 2 * np.pi, -2 * np.pi, 1e-14):
            with pytest.raises(DegeneracyError):
                eigensystem(k)


class TestCoinPower:
    def test_zeroth_power(self):
        assert np.array_equal(coin_power(0.7, 0), np.eye(3, dtype=complex))

    def test_involution_at_k_zero(self):
        assert np.abs(coin_power(0.0, 2) - np.eye(3)).max() < 1e-15

    def test_matches_eigen_form(self):
        rng = np.random.default_rng(6)
        for k in rng.uniform(-np.pi, np.pi, size=50):
            if abs(k) < 1e-3:
                continue
            es = eigensystem(k)
            via_eigen = es.m1 + es.lambda2**7 * es.m2 + es.lambda3**7 * es.m3
            assert np.abs(coin_power(k, 7) - via_eigen).max() < 1e-10


class TestInverseTransform:
    def test_initial_condition(self):
        psi = normalize_spinor([0.6, 0.8j, 0])
        for n in (-3, -1, 1, 5):
            assert np.abs(inverse_transform(psi, n, 0, samples=8)).max() < 1e-12
        assert np.abs(inverse_transform(psi, 0, 0, samples=8) - psi).max() < 1e-12

    def test_one_step_left_site(self):
        out = inverse_transform([0, 1, 0], -1, 1)
        assert np.abs(out - np.array([2 / 3, 0, 0])).max() < 1e-12

    def test_aliasing_guard(self):
        with pytest.raises(DomainError):
            inverse_transform([1, 0, 0], 0, 10, samples=20)

    def test_matches_evolution(self, random_spinors):
        (psi,) = random_spinors(1, seed=11)
        t = 256
        line = evolve(psi, t)
        for n in range(-t, t + 1, 16):
            assert np.abs(inverse_transform(psi, n, t) - line.site(n)).max() < 1e-10


class TestLineState:
    def test_matches_per_site_transform(self):
        psi = normalize_spinor([1, 2j, 3])
        t = 40
        full = line_state(psi, t)
        for n in range(-t, t + 1, 5):
            assert np.abs(full.site(n) - inverse_transform(psi, n, t)).max() < 1e-12

    def test_aliasing_guard(self):
        with pytest.raises(DomainError):
            line_state([1, 0, 0], 64, samples=100)

    def test_oversampling_is_harmless(self):
        psi = normalize_spinor([0, 1j, 1])
        a = line_state(psi, 32)
        b = line_state(psi, 32, samples=257)
        assert np.abs(a.amps - b.amps).max() < 1e-13


def test_momentum_grid_avoids_degenerate_points():
    for samples in (2, 7, 64, 1025):
        ks = momentum_grid(samples)
        assert np.abs(ks).min() > 1e-6
        assert ks.min() > -np.pi and ks.max() < np.pi
        assert np.all(np.diff(ks) > 0)
