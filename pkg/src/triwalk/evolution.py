"""Exact site-space evolution of the walk.

The state at time t is stored as a dense run of spinors covering the
support, which from a single-site start is exactly [-t, t].  One step
applies the coin at every site and shifts components; the coin is the
rank-one update  C psi = (2/3) * (sum of components) - psi,  so a step
costs one column sum and three shifted subtractions.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import spinor
from .errors import DomainError, ResourceLimitError

DEFAULT_STEP_CAP = 2**16
NORM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class AmplitudeLine:
    """Walker state at one time: spinors on sites offset .. offset+len-1."""

    offset: int
    amps: np.ndarray  # (n_sites, 3) complex
    t: int

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=np.complex128)
        if amps.ndim != 2 or amps.shape[1] != 3:
            raise DomainError("amplitude array must have shape (n_sites, 3)")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.amps.shape[0])

    def site(self, n: int) -> np.ndarray:
        """Spinor at site n (zero outside the stored support)."""
        i = n - self.offset
        if 0 <= i < self.amps.shape[0]:
            return self.amps[i]
        return np.zeros(3, dtype=np.complex128)

    def total_probability(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclass(frozen=True)
class PDFSlice:
    """Site-resolved probabilities at one time step."""

    offset: int
    probs: np.ndarray
    t: int

    def __post_init__(self):
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.probs.shape[0])

    def prob(self, n: int) -> float:
        i = n - self.offset
        if 0 <= i < self.probs.shape[0]:
            return float(self.probs[i])
        return 0.0

    def total(self) -> float:
        return float(self.probs.sum())


def init_line(psi0) -> AmplitudeLine:
    """Single-site start at n=0; psi0 must be normalized."""
    psi = spinor(psi0)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise DomainError(f"initial spinor is not normalized: |psi| = {norm!r}")
    return AmplitudeLine(offset=0, amps=psi[None, :], t=0)


def _advance(src: np.ndarray, dst: np.ndarray, work: np.ndarray) -> None:
    """Write one evolved step of ``src`` (n sites) into ``dst`` (n+2 sites)."""
    n = src.shape[0]
    u = work[:n]
    np.add(src[:, 0], src[:, 1], out=u)
    u += src[:, 2]
    u *= 2.0 / 3.0
    # First component hops left, second stays, third hops right.
    np.subtract(u, src[:, 0], out=dst[0:n, 0])
    dst[n : n + 2, 0] = 0.0
    np.subtract(u, src[:, 1], out=dst[1 : n + 1, 1])
    dst[0, 1] = 0.0
    dst[n + 1, 1] = 0.0
    np.subtract(u, src[:, 2], out=dst[2 : n + 2, 2])
    dst[0:2, 2] = 0.0


def step(line: AmplitudeLine) -> AmplitudeLine:
    """One application of the coined-walk master equation."""
    n = line.amps.shape[0]
    dst = np.empty((n + 2, 3), dtype=np.complex128)
    work = np.empty(n, dtype=np.complex128)
    _advance(line.amps, dst, work)
    return AmplitudeLine(offset=line.offset - 1, amps=dst, t=line.t + 1)


class _Evolver:
    """Ping-pong buffers for many steps without per-step allocation."""

    def __init__(self, psi0, t_end: int):
        size = 2 * t_end + 3
        self.buf_a = np.zeros((size, 3), dtype=np.complex128)
        self.buf_b = np.zeros((size, 3), dtype=np.complex128)
        self.work = np.empty(size, dtype=np.complex128)
        self.center = t_end + 1
        self.buf_a[self.center] = spinor(psi0)
        self.lo = self.center
        self.t = 0

    def advance(self) -> None:
        n = 2 * self.t + 1
        _advance(self.buf_a[self.lo : self.lo + n], self.buf_b[self.lo - 1 :], self.work)
        self.buf_a, self.buf_b = self.buf_b, self.buf_a
        self.lo -= 1
        self.t += 1

    def view(self) -> np.ndarray:
        return self.buf_a[self.lo : self.lo + 2 * self.t + 1]

    def line(self) -> AmplitudeLine:
        return AmplitudeLine(offset=-self.t, amps=self.view().copy(), t=self.t)


def _check_cap(t: int, cap: int) -> None:
    if t > cap:
        raise ResourceLimitError(f"requested {t} steps exceeds the cap of {cap}")


def evolve(psi0, t: int, cap: int = DEFAULT_STEP_CAP) -> AmplitudeLine:
    """State after t steps from a single-site start; equals t repeated steps."""
    if t < 0:
        raise DomainError("step count must be non-negative")
    _check_cap(t, cap)
    line0 = init_line(psi0)  # validates normalization
    if t == 0:
        return line0
    ev = _Evolver(line0.amps[0], t)
    for _ in range(t):
        ev.advance()
    return ev.line()


def pdf(line: AmplitudeLine) -> PDFSlice:
    """Measurement probabilities p(n) = <psi_n|psi_n>."""
    probs = np.einsum("nc,nc->n", line.amps, line.amps.conj()).real
    return PDFSlice(offset=line.offset, probs=probs, t=line.t)


def spatial_average(slice_: PDFSlice, window: int) -> PDFSlice:
    """Moving average over ``window`` consecutive sites, zero-padded edges.

    The window is centered; for even sizes it extends one site further to
    the left than to the right.
    """
    if window < 1:
        raise DomainError("window must be a positive integer")
    kernel = np.full(window, 1.0 / window)
    conv = np.convolve(slice_.probs, kernel)
    start = (window - 1) // 2
    out = conv[start : start + slice_.probs.shape[0]]
    return PDFSlice(offset=slice_.offset, probs=out, t=slice_.t)


@dataclass(frozen=True)
class SiteSeries:
    """Amplitudes at chosen sites for every time in [t_start, t_end]."""

    sites: tuple
    times: np.ndarray
    amplitudes: np.ndarray  # (n_times, n_sites, 3) complex
    final: AmplitudeLine

    def probabilities(self) -> np.ndarray:
        return np.einsum("tsc,tsc->ts", self.amplitudes, self.amplitudes.conj()).real


def record_sites(
    psi0, sites, t_end: int, t_start: int = 0, cap: int = DEFAULT_STEP_CAP
) -> SiteSeries:
    """Evolve to ``t_end`` while recording the spinors at ``sites``.

    Recording covers every step in [t_start, t_end] inclusive.
    """
    if not 0 <= t_start <= t_end:
        raise DomainError("need 0 <= t_start <= t_end")
    _check_cap(t_end, cap)
    sites = tuple(int(s) for s in sites)
    line0 = init_line(psi0)
    ev = _Evolver(line0.amps[0], max(t_end, 1))
    # Sites beyond the light cone are identically zero; record the rest.
    inside = [i for i, s in enumerate(sites) if abs(s) <= t_end]
    idx = np.asarray([sites[i] for i in inside], dtype=np.intp) + ev.center
    times = np.arange(t_start, t_end + 1)
    amps = np.zeros((times.shape[0], len(sites), 3), dtype=np.complex128)
    if t_start == 0:
        amps[0, inside] = ev.buf_a[idx]
    for t in range(1, t_end + 1):
        ev.advance()
        if t >= t_start:
            amps[t - t_start, inside] = ev.buf_a[idx]
    return SiteSeries(sites=sites, times=times, amplitudes=amps, final=ev.line())


def time_average(
    psi0, site: int, t_start: int, t_end: int, cap: int = DEFAULT_STEP_CAP
) -> float:
    """Mean of p(site, t) over t in [t_start, t_end]."""
    series = record_sites(psi0, [site], t_end, t_start=t_start, cap=cap)
    return float(series.probabilities()[:, 0].mean())


def total_probability_series(psi0, t_end: int, cap: int = DEFAULT_STEP_CAP) -> np.ndarray:
    """Sum of p(n, t) over all sites, for each t in [0, t_end].

    The walk is unitary, so every entry should equal 1 up to rounding;
    this is the standard drift diagnostic.
    """
    _check_cap(t_end, cap)
    line0 = init_line(psi0)
    ev = _Evolver(line0.amps[0], max(t_end, 1))
    out = np.empty(t_end + 1)
    out[0] = 1.0
    for t in range(1, t_end + 1):
        ev.advance()
        v = ev.view()
        out[t] = np.einsum("nc,nc->", v, v.conj()).real
    return out
