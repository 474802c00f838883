"""Fixed matrices of the walk and parsing of coin-state literals.

The internal degree of freedom at each lattice site is a 3-component
complex spinor.  One time step applies the Grover coin to every spinor
and then shifts the first component one site to the left, keeps the
second in place, and moves the third one site to the right.  Spinors
are plain ``(3,)`` complex arrays, matrices ``(3, 3)`` complex arrays.
"""

import re

import numpy as np

from .errors import DomainError, SpinorFormatError

# One complex literal: "a", "a+bi", "bi", "-bi", with optional whitespace.
_REAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^\s*(?:"
    rf"(?P<real>{_REAL})\s*(?:(?P<sign>[+-])\s*(?P<imag>{_REAL})?\s*i)?"
    rf"|(?P<only_sign>[+-]?)\s*(?P<only_imag>{_REAL})?\s*i"
    rf")\s*$"
)


def grover_coin() -> np.ndarray:
    """The 3x3 Grover coin, the reflection 2|s><s| - 1 about the uniform state."""
    return np.array(
        [[-1.0, 2.0, 2.0], [2.0, -1.0, 2.0], [2.0, 2.0, -1.0]],
        dtype=np.complex128,
    ) / 3.0


def hop_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row splits (P, Q, R) of the coin that hop right, hop left, and stay.

    P carries the third coin component to the right neighbour, Q the first
    to the left neighbour, and R keeps the second in place; P + Q + R equals
    the coin itself.
    """
    coin = grover_coin()
    p = np.zeros((3, 3), dtype=np.complex128)
    q = np.zeros((3, 3), dtype=np.complex128)
    r = np.zeros((3, 3), dtype=np.complex128)
    p[2] = coin[2]
    q[0] = coin[0]
    r[1] = coin[1]
    return p, q, r


def spinor(values) -> np.ndarray:
    """Coerce ``values`` to a read-only (3,) complex array."""
    arr = np.array(values, dtype=np.complex128).reshape(3)
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise DomainError("spinor has non-finite components")
    arr.setflags(write=False)
    return arr


def normalize_spinor(psi) -> np.ndarray:
    """Scale a spinor to unit norm, preserving its phase."""
    arr = np.array(psi, dtype=np.complex128).reshape(3)
    norm = np.linalg.norm(arr)
    if norm == 0.0:
        raise DomainError("cannot normalize the zero spinor")
    return spinor(arr / norm)


def _parse_complex(token: str) -> complex:
    m = _COMPLEX_RE.match(token)
    if m is None:
        raise SpinorFormatError(f"invalid complex literal: {token.strip()!r}")
    if m.group("only_imag") is not None or m.group("only_sign"):
        sign = -1.0 if m.group("only_sign") == "-" else 1.0
        imag = m.group("only_imag")
        return complex(0.0, sign * float(imag if imag is not None else 1.0))
    real = float(m.group("real"))
    if m.group("sign") is None:
        return complex(real, 0.0)
    sign = -1.0 if m.group("sign") == "-" else 1.0
    imag = m.group("imag")
    return complex(real, sign * float(imag if imag is not None else 1.0))


def parse_spinor(text: str, normalize: bool = False) -> np.ndarray:
    """Parse "a, b, c" with complex literals using the ``i`` suffix.

    Accepted component forms: ``1``, ``-2.5``, ``1i``, ``-0.3i``, ``2+1i``,
    ``1-3i``.  With ``normalize`` the result is scaled to unit norm.
    """
    parts = text.split(",")
    if len(parts) != 3:
        raise SpinorFormatError(
            f"expected 3 comma-separated components, got {len(parts)}: {text!r}"
        )
    values = [_parse_complex(p) for p in parts]
    if normalize:
        return normalize_spinor(values)
    return spinor(values)


def format_spinor(psi) -> str:
    """Inverse of :func:`parse_spinor`, with round-trip precision."""
    parts = []
    for z in np.asarray(psi, dtype=np.complex128).reshape(3):
        re_, im = float(z.real), float(z.imag)
        if im == 0.0:
            parts.append(repr(re_))
        elif re_ == 0.0:
            parts.append(f"{im!r}i")
        else:
            parts.append(f"{re_!r}{'+' if im >= 0 else '-'}{abs(im)!r}i")
    return ",".join(parts)
