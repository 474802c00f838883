"""Momentum-space picture of the walk.

A Fourier transform turns the master equation into multiplication by a
k-dependent unitary 3x3 coin.  Its spectrum is {1, exp(+i w), exp(-i w)}
with  cos w = -2/3 - cos(k)/3;  the flat eigenvalue 1 is what produces
localization.  Spectral projectors are built by Lagrange interpolation
on the eigenvalues, which is exact whenever they are distinct (all k
except k = 0, where the two rotating eigenvalues collide at -1).
"""

from dataclasses import dataclass

import numpy as np

from .algebra import spinor
from .errors import DegeneracyError, DomainError
from .evolution import AmplitudeLine

_DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class MomentumCoin:
    k: float
    kappa: complex
    matrix: np.ndarray


@dataclass(frozen=True)
class Eigensystem:
    k: float
    omega: float
    lambda2: complex
    lambda3: complex
    m1: np.ndarray
    m2: np.ndarray
    m3: np.ndarray

    @property
    def lambda1(self) -> complex:
        return 1.0 + 0.0j


def momentum_coin(k: float) -> MomentumCoin:
    """The momentum-space coin at wavenumber k."""
    if not np.isfinite(k):
        raise DomainError("wavenumber must be finite")
    kappa = np.exp(1j * k)
    ki = 1.0 / kappa
    matrix = (
        np.array(
            [
                [-kappa, 2 * kappa, 2 * kappa],
                [2, -1, 2],
                [2 * ki, 2 * ki, -ki],
            ],
            dtype=np.complex128,
        )
        / 3.0
    )
    matrix.setflags(write=False)
    return MomentumCoin(k=float(k), kappa=complex(kappa), matrix=matrix)


def dispersion_omega(k) -> np.ndarray:
    """Eigenphase w(k) in (0, pi] of the rotating eigenvalue pair."""
    return np.arccos(-2.0 / 3.0 - np.cos(k) / 3.0)


def eigensystem(k: float) -> Eigensystem:
    """Eigenvalues and spectral projectors of the momentum coin.

    Raises DegeneracyError at k = 0 (mod 2pi), where exp(+-iw) merge at -1;
    use coin_power there instead.
    """
    if not np.isfinite(k):
        raise DomainError("wavenumber must be finite")
    if abs(np.remainder(k + np.pi, 2 * np.pi) - np.pi) < _DEGENERACY_TOL:
        raise DegeneracyError("eigenprojectors are degenerate at k = 0 (mod 2 pi)")
    c = momentum_coin(k).matrix
    omega = float(dispersion_omega(k))
    l2 = np.exp(1j * omega)
    l3 = np.conj(l2)
    eye = np.eye(3, dtype=np.complex128)
    # Lagrange form: M_j = prod_{i != j} (C - l_i) / (l_j - l_i).
    m1 = (c - l2 * eye) @ (c - l3 * eye) / ((1.0 - l2) * (1.0 - l3))
    m2 = (c - eye) @ (c - l3 * eye) / ((l2 - 1.0) * (l2 - l3))
    m3 = (c - eye) @ (c - l2 * eye) / ((l3 - 1.0) * (l3 - l2))
    for m in (m1, m2, m3):
        m.setflags(write=False)
    return Eigensystem(k=float(k), omega=omega, lambda2=complex(l2), lambda3=complex(l3), m1=m1, m2=m2, m3=m3)


def coin_power(k: float, t: int) -> np.ndarray:
    """t-th power of the momentum coin by binary powering; valid at every k."""
    if t < 0:
        raise DomainError("power must be non-negative")
    return np.linalg.matrix_power(momentum_coin(k).matrix, t)


def momentum_grid(samples: int) -> np.ndarray:
    """Quarter-offset uniform grid on (-pi, pi); never hits k = 0.

    Any offset keeps the sampled inverse transform exact once the grid is
    fine enough; this one dodges the degenerate wavenumber for even and
    odd sample counts alike.
    """
    if samples < 1:
        raise DomainError("need at least one sample")
    j = np.arange(samples)
    return -np.pi + 2.0 * np.pi * (j + 0.25) / samples


def _coin_batch(ks: np.ndarray) -> np.ndarray:
    kappa = np.exp(1j * ks)
    ki = np.conj(kappa)
    out = np.empty((ks.shape[0], 3, 3), dtype=np.complex128)
    out[:, 0, 0] = -kappa
    out[:, 0, 1] = 2 * kappa
    out[:, 0, 2] = 2 * kappa
    out[:, 1, 0] = 2
    out[:, 1, 1] = -1
    out[:, 1, 2] = 2
    out[:, 2, 0] = 2 * ki
    out[:, 2, 1] = 2 * ki
    out[:, 2, 2] = -ki
    out /= 3.0
    return out


def _coin_power_batch(ks: np.ndarray, t: int) -> np.ndarray:
    """C(k)^t for a whole array of wavenumbers at once."""
    base = _coin_batch(ks)
    result = np.broadcast_to(np.eye(3, dtype=np.complex128), base.shape).copy()
    e = int(t)
    while e:
        if e & 1:
            result = result @ base
        base = base @ base
        e >>= 1
    return result


def _require_alias_free(t: int, samples: int) -> int:
    if samples is None:
        samples = 2 * t + 2
    if samples < 2 * t + 1:
        raise DomainError(
            f"{samples} momentum samples alias a walk of {t} steps; need at least {2 * t + 1}"
        )
    return samples


def inverse_transform(psi0, n: int, t: int, samples: int | None = None) -> np.ndarray:
    """Spinor at site n after t steps, from the sampled inverse transform.

    With at least 2t+1 samples the quadrature is exact (the state has
    finite support), so this is an independent oracle for the site-space
    evolution.
    """
    if t < 0:
        raise DomainError("step count must be non-negative")
    psi = spinor(psi0)
    samples = _require_alias_free(t, samples)
    ks = momentum_grid(samples)
    evolved = _coin_power_batch(ks, t) @ psi  # (samples, 3)
    phases = np.exp(1j * ks * n)
    return phases @ evolved / samples


def line_state(psi0, t: int, samples: int | None = None) -> AmplitudeLine:
    """Full state at time t through the eigendecomposition and an FFT.

    Independent of both the site-space path (different route) and of
    :func:`inverse_transform` (closed-form eigenvalue powers instead of
    matrix powering, FFT instead of direct summation).
    """
    if t < 0:
        raise DomainError("step count must be non-negative")
    psi = spinor(psi0)
    samples = _require_alias_free(t, samples)
    ks = momentum_grid(samples)
    coins = _coin_batch(ks)
    omega = dispersion_omega(ks)
    l2 = np.exp(1j * omega)
    l3 = np.conj(l2)
    eye = np.eye(3, dtype=np.complex128)
    d1 = ((1.0 - l2) * (1.0 - l3)).reshape(-1, 1)
    d2 = ((l2 - 1.0) * (l2 - l3)).reshape(-1, 1)
    d3 = ((l3 - 1.0) * (l3 - l2)).reshape(-1, 1)
    cm1 = coins - eye
    cm2 = coins - l2[:, None, None] * eye
    cm3 = coins - l3[:, None, None] * eye
    v1 = np.einsum("kij,kj->ki", cm2 @ cm3, np.broadcast_to(psi, (samples, 3))) / d1
    v2 = np.einsum("kij,kj->ki", cm1 @ cm3, np.broadcast_to(psi, (samples, 3))) / d2
    v3 = np.einsum("kij,kj->ki", cm1 @ cm2, np.broadcast_to(psi, (samples, 3))) / d3
    phi = v1 + l2[:, None] ** t * v2 + l3[:, None] ** t * v3
    # psi_n = exp(i n k_0) * ifft(phi)[n mod M] with k_0 the grid origin.
    transformed = np.fft.ifft(phi, axis=0)
    ns = np.arange(-t, t + 1)
    twist = np.exp(1j * ns * (np.pi / (2.0 * samples) - np.pi))
    amps = transformed[np.mod(ns, samples)] * twist[:, None]
    return AmplitudeLine(offset=-t, amps=amps, t=t)
