"""Weak limit of the walk: smooth front density, delta weight, moments.

On the ballistic scale v = n/t the PDF converges to a delta peak at
v = 0 carrying the total localization weight, plus a smooth density
supported on |v| < 1/sqrt(3).  The density is a quadratic polynomial in
v divided by pi sqrt(2 (1 - 3 v^2)) (1 - v^2); its inverse-square-root
endpoint singularity is removed exactly by v = sin(theta)/sqrt(3), so
every quadrature here is over a smooth integrand.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import spinor
from .errors import DomainError

_S6 = np.sqrt(6.0)
FRONT_SPEED = 1.0 / np.sqrt(3.0)

# Front quadratic form, split by power of v: M(v) = M0 + M1 v + M2 v^2.
_M0 = np.array([[1.0, 0.0, 1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 1.0]])
_M1 = np.array([[-2.0, 2.0, 0.0], [2.0, 0.0, -2.0], [0.0, -2.0, 2.0]])
_M2 = np.array([[1.0, -2.0, -5.0], [-2.0, -2.0, -2.0], [-5.0, -2.0, 1.0]])

# Delta-peak weight as a quadratic form in the initial spinor.
_DELTA = np.array(
    [
        [1.0 / _S6, 1.0 - np.sqrt(2.0 / 3.0), 2.0 - 5.0 / _S6],
        [1.0 - np.sqrt(2.0 / 3.0), 1.0 - np.sqrt(2.0 / 3.0), 1.0 - np.sqrt(2.0 / 3.0)],
        [2.0 - 5.0 / _S6, 1.0 - np.sqrt(2.0 / 3.0), 1.0 / _S6],
    ]
)

# Closed-form moment matrices of the front density: (m0, <n>/t, <n^2>/t^2).
_MOM0 = (
    np.array(
        [
            [-1.0 + _S6, 2.0 - _S6, 5.0 - 2.0 * _S6],
            [2.0 - _S6, 2.0, 2.0 - _S6],
            [5.0 - 2.0 * _S6, 2.0 - _S6, -1.0 + _S6],
        ]
    )
    / _S6
)
_MOM1 = (
    np.array(
        [
            [2.0 - _S6, -2.0 + _S6, 0.0],
            [-2.0 + _S6, 0.0, 2.0 - _S6],
            [0.0, 2.0 - _S6, -2.0 + _S6],
        ]
    )
    / _S6
)
_MOM2 = (
    np.array(
        [
            [-13.0 + 6.0 * _S6, 14.0 - 6.0 * _S6, 29.0 - 12.0 * _S6],
            [14.0 - 6.0 * _S6, 2.0, 14.0 - 6.0 * _S6],
            [29.0 - 12.0 * _S6, 14.0 - 6.0 * _S6, -13.0 + 6.0 * _S6],
        ]
    )
    / (6.0 * _S6)
)

for _m in (_M0, _M1, _M2, _DELTA, _MOM0, _MOM1, _MOM2):
    _m.setflags(write=False)


@dataclass(frozen=True)
class WeakLimitDensity:
    """Delta weight at v = 0 plus the smooth front density f(v)."""

    delta_weight: float
    density: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class MomentSet:
    m0: float
    m1_rate: float
    m2_rate: float


def front_matrix(v: float) -> np.ndarray:
    """The 3x3 quadratic-form matrix of the front density at velocity v."""
    return _M0 + _M1 * v + _M2 * v * v


def _quad_form(psi: np.ndarray, matrix: np.ndarray) -> float:
    return float(np.real(np.vdot(psi, matrix @ psi)))


def _front_coeffs(psi: np.ndarray) -> tuple[float, float, float]:
    return _quad_form(psi, _M0), _quad_form(psi, _M1), _quad_form(psi, _M2)


def _front_density(coeffs, v):
    c0, c1, c2 = coeffs
    v = np.asarray(v, dtype=np.float64)
    inside = np.abs(v) < FRONT_SPEED
    vv = np.where(inside, v, 0.0)
    num = c0 + c1 * vv + c2 * vv * vv
    den = np.pi * np.sqrt(2.0 * (1.0 - 3.0 * vv * vv)) * (1.0 - vv * vv)
    out = np.where(inside, num / den, 0.0)
    return out if out.ndim else float(out)


def smooth_pdf(psi0, n: int, t: int) -> float:
    """Non-oscillating part of p(n, t); zero outside the front |n/t| >= 1/sqrt(3)."""
    if t < 1:
        raise DomainError("smooth PDF needs t >= 1")
    psi = spinor(psi0)
    return _front_density(_front_coeffs(psi), n / t) / t


def delta_weight_matrix() -> np.ndarray:
    """Quadratic-form matrix of the delta weight in the weak limit."""
    return _DELTA


def limit_density(psi0) -> WeakLimitDensity:
    """Weak-limit description for a normalized initial spinor."""
    psi = spinor(psi0)
    weight = _quad_form(psi, _DELTA)
    coeffs = _front_coeffs(psi)

    def density(v):
        return _front_density(coeffs, v)

    return WeakLimitDensity(delta_weight=weight, density=density)


def mixed_state_density(v):
    """Front density for the uniform mixture of the three basis starts.

    The continuous part 4 / (3 pi (1 - v^2) sqrt(2 - 6 v^2)); the
    accompanying delta weight is exactly 1/3 and reported separately.
    """
    v = np.asarray(v, dtype=np.float64)
    if np.any(np.abs(v) >= FRONT_SPEED):
        raise DomainError("mixed-state density is defined for |v| < 1/sqrt(3)")
    out = 4.0 / (3.0 * np.pi * (1.0 - v * v) * np.sqrt(2.0 - 6.0 * v * v))
    return out if out.ndim else float(out)


def front_moment(psi0, order: int = 0, nodes: int = 400) -> float:
    """Moment integral of v^order against the front density, by quadrature.

    Uses v = sin(theta)/sqrt(3), under which the endpoint singularity
    cancels exactly and Gauss-Legendre converges to machine precision.
    """
    if order < 0:
        raise DomainError("moment order must be non-negative")
    psi = spinor(psi0)
    c0, c1, c2 = _front_coeffs(psi)
    theta, wts = np.polynomial.legendre.leggauss(nodes)
    theta = theta * (np.pi / 2.0)
    wts = wts * (np.pi / 2.0)
    v = np.sin(theta) / np.sqrt(3.0)
    num = c0 + c1 * v + c2 * v * v
    integrand = v**order * num / (np.pi * _S6 * (1.0 - v * v))
    return float(np.sum(wts * integrand))


def moments(psi0) -> MomentSet:
    """Closed-form front moments: mass, drift rate <n>/t, spread rate <n^2>/t^2."""
    psi = spinor(psi0)
    return MomentSet(
        m0=_quad_form(psi, _MOM0),
        m1_rate=_quad_form(psi, _MOM1),
        m2_rate=_quad_form(psi, _MOM2),
    )
