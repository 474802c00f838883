"""Stationary-phase approximation of the ballistic front.

For long times the two rotating eigenvalue branches contribute
oscillatory integrals with phase t * (v k +- w(k)), v = n/t.  Each
branch has a single point of stationary phase inside the front
|v| < 1/sqrt(3); expanding the phase to second order there gives the
front operators with the familiar 1/sqrt(2 pi t |rho''|) prefactor and
a +- pi/4 phase rotation set by the sign of the curvature.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import spinor
from .errors import DomainError
from .localization import stationary_matrix
from .spectral import dispersion_omega, eigensystem

FRONT_SPEED = 1.0 / np.sqrt(3.0)
DEFAULT_GUARD = 1e-3
_RESIDUAL_TOL = 1e-10

_ZERO33 = np.zeros((3, 3), dtype=np.complex128)
_ZERO33.setflags(write=False)


@dataclass(frozen=True)
class StationaryPoint:
    v: float
    branch: str
    k_star: float
    rho_star: float
    rho2_star: float


def _branch_sign(branch: str) -> float:
    if branch == "plus":
        return 1.0
    if branch == "minus":
        return -1.0
    raise DomainError(f"branch must be 'plus' or 'minus', got {branch!r}")


def _omega_derivatives(k: float) -> tuple[float, float]:
    """(w', w'') from cos w = -2/3 - cos(k)/3."""
    w = dispersion_omega(k)
    sw = np.sin(w)
    d1 = -np.sin(k) / (3.0 * sw)
    d2 = -np.cos(k) / (3.0 * sw) + np.sin(k) * np.cos(w) * d1 / (3.0 * sw**2)
    return float(d1), float(d2)


def stationary_point(v: float, branch: str) -> StationaryPoint:
    """The point where the phase v k +- w(k) is stationary, with curvature.

    Only defined inside the front, |v| < 1/sqrt(3).  The wavenumber is
    sign(v) * arccos((1 - 5 v^2) / (v^2 - 1)) for the plus branch and its
    mirror for the minus branch; at v = 0 both land on k = pi.
    """
    s = _branch_sign(branch)
    if not np.isfinite(v) or abs(v) >= FRONT_SPEED:
        raise DomainError(f"velocity |v| = {abs(v)!r} is outside the front |v| < 1/sqrt(3)")
    cos_k = (1.0 - 5.0 * v * v) / (v * v - 1.0)
    base = float(np.arccos(np.clip(cos_k, -1.0, 1.0)))
    if v == 0.0:
        k_star = np.pi
    else:
        k_star = s * np.sign(v) * base
    d1, d2 = _omega_derivatives(k_star)
    residual = v + s * d1
    if abs(residual) > _RESIDUAL_TOL:
        raise DomainError(
            f"no stationary point at v={v!r}, branch={branch}: residual {residual!r}"
        )
    rho_star = v * k_star + s * float(dispersion_omega(k_star))
    rho2_star = s * d2
    return StationaryPoint(
        v=float(v), branch=branch, k_star=float(k_star), rho_star=rho_star, rho2_star=rho2_star
    )


def front_operators(
    n: int, t: int, guard: float = DEFAULT_GUARD
) -> tuple[np.ndarray, np.ndarray]:
    """Leading-order operators of the two rotating branches at (n, t).

    Outside the guarded front, |n/t| >= 1/sqrt(3) - guard, the
    contributions are exponentially suppressed and both operators are
    returned as zero.  The guard keeps the evaluation away from the
    front edge where the curvature vanishes.
    """
    if t < 1:
        raise DomainError("front operators need t >= 1")
    v = n / t
    if abs(v) >= FRONT_SPEED - guard:
        return _ZERO33, _ZERO33
    out = []
    for branch in ("plus", "minus"):
        sp = stationary_point(v, branch)
        es = eigensystem(sp.k_star)
        proj = es.m2 if branch == "plus" else es.m3
        phase = t * sp.rho_star + np.sign(sp.rho2_star) * np.pi / 4.0
        amp = np.exp(1j * phase) / np.sqrt(2.0 * np.pi * t * abs(sp.rho2_star))
        out.append(amp * proj)
    return out[0], out[1]


def asymptotic_pdf(psi0, n: int, t: int, guard: float = DEFAULT_GUARD) -> float:
    """Long-time approximation of p(n, t): stationary part plus front."""
    psi = spinor(psi0)
    u2, u3 = front_operators(n, t, guard=guard)
    w = (stationary_matrix(n) + u2 + u3) @ psi
    return float(np.real(np.vdot(w, w)))


def relative_difference(ps: float, pa: float) -> float:
    """Symmetric relative difference 2|ps - pa| / (ps + pa), in [0, 2].

    Defined as 0 when both values vanish (empty sites).
    """
    if ps < 0.0 or pa < 0.0:
        raise DomainError("relative difference is defined for non-negative values")
    if ps == 0.0 and pa == 0.0:
        return 0.0
    return 2.0 * abs(ps - pa) / (ps + pa)


def stationary_front_cross(psi0, n: int, t: int, guard: float = DEFAULT_GUARD) -> float:
    """Interference of the stationary part with the front.

    Real-valued and oscillatory; averages to zero over time windows and
    carries the generic 1/sqrt(t) approach to the smooth description.
    Identically zero whenever the localization vanishes.
    """
    psi = spinor(psi0)
    u2, u3 = front_operators(n, t, guard=guard)
    w1 = stationary_matrix(n) @ psi
    w23 = (u2 + u3) @ psi
    return float(2.0 * np.real(np.vdot(w1, w23)))


def branch_cross(psi0, n: int, t: int, guard: float = DEFAULT_GUARD) -> float:
    """Interference between the two rotating branches.

    Real-valued, oscillatory, mean-zero; this is the remainder that
    matters far from the origin where the localization is dead.
    """
    psi = spinor(psi0)
    u2, u3 = front_operators(n, t, guard=guard)
    return float(2.0 * np.real(np.vdot(u2 @ psi, u3 @ psi)))
