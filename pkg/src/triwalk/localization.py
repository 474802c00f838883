"""Closed forms for the time-independent, localized part of the walk.

The flat eigenvalue of the momentum coin leaves behind a stationary
component anchored at the starting site.  Its matrix elements are
rational in kappa = exp(ik) with the two reciprocal real poles
kappa = -5 +- 2 sqrt(6), and contour integration gives the stationary
operator in closed form, one matrix per sign regime of the site index.
The stationary probabilities decay like kappa_plus^(2|n|), with an
amplitude that may differ between the two sides.
"""

import numpy as np

from .algebra import spinor
from .errors import DomainError

_S6 = np.sqrt(6.0)

KAPPA_PLUS = -5.0 + 2.0 * _S6  # inside the unit circle, ~ -0.1010
KAPPA_MINUS = -5.0 - 2.0 * _S6  # its reciprocal, ~ -9.899

_CENTER = (
    np.array(
        [
            [1.0, -2.0 + _S6, -5.0 + 2.0 * _S6],
            [-2.0 + _S6, -2.0 + _S6, -2.0 + _S6],
            [-5.0 + 2.0 * _S6, -2.0 + _S6, 1.0],
        ]
    )
    / _S6
)

_RIGHT = (
    np.array(
        [
            [1.0, -2.0 + _S6, -5.0 + 2.0 * _S6],
            [-2.0 - _S6, -2.0, -2.0 + _S6],
            [-5.0 - 2.0 * _S6, -2.0 - _S6, 1.0],
        ]
    )
    / _S6
)

_LEFT = (
    np.array(
        [
            [1.0, -2.0 - _S6, -5.0 - 2.0 * _S6],
            [-2.0 + _S6, -2.0, -2.0 - _S6],
            [-5.0 + 2.0 * _S6, -2.0 + _S6, 1.0],
        ]
    )
    / _S6
)

for _m in (_CENTER, _RIGHT, _LEFT):
    _m.setflags(write=False)


def residue_at_zero(m: int, a: float) -> float:
    """Residue at the origin of a * kappa^m / (1 + 10 kappa + kappa^2).

    Equals a * (kappa_minus^m - kappa_plus^m) / (4 sqrt(6)); this is the
    building block for the stationary operator at non-positive sites.
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    return a * (KAPPA_MINUS**m - KAPPA_PLUS**m) / (4.0 * _S6)


def stationary_matrix(n: int) -> np.ndarray:
    """The operator mapping the initial spinor to the stationary spinor at site n.

    Negative n uses kappa_minus^n = kappa_plus^(-n) so that nothing
    overflows however far out the site is.
    """
    if n == 0:
        return _CENTER
    if n > 0:
        return KAPPA_PLUS**n * _RIGHT
    return KAPPA_PLUS ** (-n) * _LEFT


def stationary_pdf(psi0, n: int) -> float:
    """Long-time limit of p(n, t): the squared stationary spinor at site n."""
    w = stationary_matrix(n) @ spinor(psi0)
    return float(np.real(np.vdot(w, w)))


def total_localization(psi0) -> float:
    """Sum of the stationary PDF over all sites, in closed form.

    Away from the origin the stationary probabilities are geometric with
    ratio kappa_plus^2 on each side, so the sum telescopes to the n = 0
    term plus two geometric series seeded at n = +-1.
    """
    psi = spinor(psi0)
    p0 = stationary_pdf(psi, 0)
    p_right = stationary_pdf(psi, 1)
    p_left = stationary_pdf(psi, -1)
    ratio = KAPPA_PLUS**2
    return p0 + (p_right + p_left) / (1.0 - ratio)


def one_sided_family(a: float, b: float, side: str = "positive") -> np.ndarray:
    """Normalized initial spinor whose localization vanishes on one side.

    ``side="positive"`` kills the stationary PDF at every n > 0,
    ``side="negative"`` at every n < 0; the other side still decays
    exponentially.  The two one-parameter families intersect in the
    direction (1, -2, 1), for which both sides vanish (b = -a/2).
    """
    if a == 0.0 and b == 0.0:
        raise DomainError("family parameters (a, b) must not both be zero")
    if side == "positive":
        kappa = KAPPA_PLUS
    elif side == "negative":
        kappa = KAPPA_MINUS
    else:
        raise DomainError(f"side must be 'positive' or 'negative', got {side!r}")
    first = -a * (1.0 + kappa) / 2.0 - b * kappa
    vec = np.array([first, a, b], dtype=np.complex128)
    vec /= np.linalg.norm(vec)
    vec.setflags(write=False)
    return vec
