"""Spectra, figures of merit and reductions built on the generic solver."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Iterator, Sequence

import numpy as np

from .devices import (
    DeviceKind,
    DeviceParams,
    analytic_smatrix,
    build_device,
    isolator_lossy_amplitude,
)
from .errors import (
    AsymmetricGrid,
    InfiniteIsolation,
    InvalidParams,
    SingularAtFrequency,
    UnknownPort,
)
from .network import Network
from .scattering import scattering_matrix, scattering_stack

ZERO_TOL = 1e-12
ZERO_AMPLITUDE = math.sqrt(ZERO_TOL)
SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform grid of probe detunings ``start .. stop`` with ``points`` samples."""

    start: float = -2.0
    stop: float = 2.0
    points: int = 401

    def __post_init__(self):
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "stop", float(self.stop))
        if int(self.points) != self.points:
            raise InvalidParams(f"grid points must be an integer, got {self.points}")
        object.__setattr__(self, "points", int(self.points))
        if not self.start < self.stop:
            raise InvalidParams(f"grid needs start < stop, got {self.start} >= {self.stop}")
        if self.points < 2:
            raise InvalidParams(f"grid needs at least 2 points, got {self.points}")

    @property
    def symmetric(self) -> bool:
        return self.start == -self.stop

    @property
    def omegas(self) -> np.ndarray:
        w = np.linspace(self.start, self.stop, self.points)
        if self.symmetric:
            # exact mirror pairs (and an exact zero for odd point counts)
            w = 0.5 * (w - w[::-1])
        return w


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Scattering amplitudes over a frequency grid.

    ``s[k, dest, src]`` is the amplitude at ``omegas[k]``; rows where the
    solver hit a singular point are NaN and listed in ``gaps``.
    """

    omegas: np.ndarray
    ports: tuple[str, ...]
    s: np.ndarray
    grid: FrequencyGrid | None = None

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.s) ** 2

    @property
    def gaps(self) -> np.ndarray:
        if not self.ports:
            return np.array([])
        return self.omegas[np.isnan(self.s[:, 0, 0].real)]

    def _i(self, port: str) -> int:
        try:
            return self.ports.index(port)
        except ValueError:
            raise UnknownPort(f"no port named {port!r}") from None

    def transmission(self, src: str, dest: str) -> np.ndarray:
        return self.probabilities[:, self._i(dest), self._i(src)]

    def reflection(self, port: str) -> np.ndarray:
        i = self._i(port)
        return self.probabilities[:, i, i]

    def columns(self) -> Iterator[tuple[str, np.ndarray]]:
        """``T_<src>_<dest>`` for every ordered port pair, then ``R_<port>``."""
        for src in self.ports:
            for dest in self.ports:
                if src != dest:
                    yield f"T_{src}_{dest}", self.transmission(src, dest)
        for port in self.ports:
            yield f"R_{port}", self.reflection(port)

    def sorted(self) -> "Spectrum":
        order = np.argsort(self.omegas, kind="stable")
        return Spectrum(self.omegas[order], self.ports, self.s[order], self.grid)


def sweep(net: Network, grid: FrequencyGrid | Sequence[float]) -> Spectrum:
    """Evaluate the full scattering matrix at every grid frequency.

    ``grid`` may also be an explicit sequence of frequencies, evaluated in
    the order given.
    """
    if isinstance(grid, FrequencyGrid):
        omegas, g = grid.omegas, grid
    else:
        omegas, g = np.asarray(grid, dtype=float), None
    s, _ = scattering_stack(net, omegas)
    return Spectrum(omegas, tuple(net.port_names), s, g)


def isolation_ratio(net: Network, omega: float, src: str, dest: str,
                    zero_tol: float = ZERO_TOL) -> complex:
    """Forward over backward transmission amplitude, ``t(src->dest) / t(dest->src)``.

    Raises :class:`InfiniteIsolation` when the backward amplitude is below
    ``zero_tol`` in magnitude.
    """
    net.port_index(src)
    net.port_index(dest)
    sm = scattering_matrix(net, omega)
    fwd, back = sm.amplitude(src, dest), sm.amplitude(dest, src)
    if abs(back) <= zero_tol:
        raise InfiniteIsolation(
            f"|t({dest}->{src})| = {abs(back):.3g} at omega={omega}; forward |t| = {abs(fwd):.6g}"
        )
    return fwd / back


def bandwidth(spec: Spectrum, src: str, dest: str, threshold: float = 0.5) -> float:
    """Width of the contiguous window around the peak where ``T >= threshold * T_max``.

    ``src == dest`` measures the reflection.  Returns 0 when the peak itself
    is below ``threshold``.  NaN gaps break the window.
    """
    if not 0.0 < threshold < 1.0:
        raise InvalidParams(f"threshold must lie in (0, 1), got {threshold}")
    spec = spec.sorted()
    t = spec.reflection(src) if src == dest else spec.transmission(src, dest)
    if t.size == 0 or np.all(np.isnan(t)):
        return 0.0
    peak = int(np.nanargmax(t))
    t_max = t[peak]
    if t_max < threshold:
        return 0.0
    above = t >= threshold * t_max
    lo = peak
    while lo > 0 and above[lo - 1]:
        lo -= 1
    hi = peak
    while hi < t.size - 1 and above[hi + 1]:
        hi += 1
    return float(spec.omegas[hi] - spec.omegas[lo])


@dataclass(frozen=True)
class EffectiveDamping:
    gamma_e_id: float
    kappa_e_id: float

    @property
    def total(self) -> float:
        return self.gamma_e_id + self.kappa_e_id


def effective_damping(g_c: float, kappa_c3: float, gamma_c: float = 0.0) -> EffectiveDamping:
    """Emitter damping induced by a strongly damped auxiliary cavity.

    Valid when the auxiliary cavity's external damping dominates both the
    emitter damping and ``g_c``.
    """
    if g_c < 0 or kappa_c3 < 0 or gamma_c < 0:
        raise InvalidParams("g_c, kappa_c3 and gamma_c must be >= 0")
    total = kappa_c3 + gamma_c
    if not total > 0.0:
        raise InvalidParams("kappa_c3 + gamma_c must be > 0")
    scale = 4 * g_c * g_c / (total * total)
    return EffectiveDamping(scale * gamma_c, scale * kappa_c3)


def adiabatic_isolator(p: DeviceParams) -> DeviceParams:
    """Two-port isolator equivalent to a symmetric circulator with its
    auxiliary cavity eliminated.
    """
    k1, k2, k3 = p.kappas(3)
    eff = effective_damping(p.g_c, k3, p.gamma_c)
    iso = p.restricted(DeviceKind.ISOLATOR)
    return replace(iso, gamma_e=p.gamma_e + eff.total, kappa_c=(k1, k2))


class Symmetry(str, enum.Enum):
    SYMMETRIC_IN_OMEGA = "SymmetricInOmega"
    ANTISYMMETRIC_SWAP = "AntisymmetricSwap"
    NEITHER = "Neither"


def classify_symmetry(spec: Spectrum, tol: float = SYMMETRY_TOL) -> Symmetry:
    """Which mirror relation the spectrum obeys.

    ``SYMMETRIC_IN_OMEGA``: ``T_ij(w) = T_ij(-w)``.
    ``ANTISYMMETRIC_SWAP``: ``T_ij(w) = T_ji(-w)``.
    The first is reported when both hold.
    """
    spec = spec.sorted()
    w = spec.omegas
    if w.size == 0 or not np.array_equal(w, -w[::-1]):
        raise AsymmetricGrid("symmetry classification needs a grid mirrored about omega=0")
    p = spec.probabilities
    mirrored = p[::-1]
    valid = ~(np.isnan(p).any(axis=(1, 2)) | np.isnan(mirrored).any(axis=(1, 2)))
    p, mirrored = p[valid], mirrored[valid]
    if np.all(np.abs(p - mirrored) <= tol):
        return Symmetry.SYMMETRIC_IN_OMEGA
    if np.all(np.abs(p - np.swapaxes(mirrored, 1, 2)) <= tol):
        return Symmetry.ANTISYMMETRIC_SWAP
    return Symmetry.NEITHER


def relative_error(generic: complex, analytic: complex, floor: float = ZERO_AMPLITUDE) -> float:
    """``|generic - analytic| / |generic|``, with amplitudes below ``floor``
    (default: the amplitude of a probability at the exact-zero tolerance)
    measured against ``floor`` instead, so rounding noise on vanishing
    entries is not reported as a relative error of order one.
    """
    return abs(generic - analytic) / max(abs(generic), floor)


def compare_closed_form(kind: DeviceKind, p: DeviceParams, omegas: Sequence[float]):
    """Generic versus closed-form scattering elements.

    Yields ``(omega, entry, generic, analytic, rel_err)`` per matrix entry in
    row-major ``S_<dest>_<src>`` order.  Where the closed form is singular
    (a removable singularity of its parametrisation) ``analytic`` and
    ``rel_err`` are NaN.
    """
    kind = DeviceKind(kind)
    net = build_device(kind, p)
    ports = net.port_names
    omegas = np.asarray(omegas, dtype=float)
    generic, _ = scattering_stack(net, omegas)
    nan = complex(math.nan, math.nan)
    for k, w in enumerate(omegas):
        try:
            a = analytic_smatrix(kind, p, float(w)).s
        except SingularAtFrequency:
            a = None
        for i, dest in enumerate(ports):
            for j, src in enumerate(ports):
                g = complex(generic[k, i, j])
                an = nan if a is None else complex(a[i, j])
                err = math.nan if a is None else relative_error(g, an)
                yield float(w), f"S_{dest}_{src}", g, an, err


def isolator_loss_scan(j_a: float, j_b: float, kappa_c: float, gamma_e: float,
                       j_ab_values: Sequence[float], gamma_c_values: Sequence[float],
                       omega: float = 0.0):
    """Forward and reverse isolator transmission on a ``(gamma_c, J_ab)`` grid.

    The emitter coupling at every point is the lossy-cavity cancellation
    value for that ``(J_ab, gamma_c)``.  Returns a dict of 2-D arrays indexed
    ``[gamma_c, J_ab]``: generic ``T_a_b``/``T_b_a`` and the closed-form
    forward probability ``T_a_b_closed`` (only meaningful at ``omega = 0``).
    """
    j_ab_values = np.asarray(j_ab_values, dtype=float)
    gamma_c_values = np.asarray(gamma_c_values, dtype=float)
    shape = (gamma_c_values.size, j_ab_values.size)
    out = {name: np.empty(shape) for name in ("T_a_b", "T_b_a", "T_a_b_closed")}
    for i, gc in enumerate(gamma_c_values):
        for j, jab in enumerate(j_ab_values):
            den = 4 * jab * jab + gc * gc
            g = math.sqrt(2 * j_a * j_b * jab * gamma_e / den) if den > 0 else 0.0
            p = DeviceParams(j_a=j_a, j_b=j_b, j_ab=jab, g_a=g, g_b=g, phi1=1.5 * math.pi,
                             gamma_c=gc, gamma_e=gamma_e, kappa_c=kappa_c)
            sm = scattering_matrix(build_device(DeviceKind.ISOLATOR, p), omega)
            out["T_a_b"][i, j] = sm.transmission("a", "b")
            out["T_b_a"][i, j] = sm.transmission("b", "a")
            out["T_a_b_closed"][i, j] = isolator_lossy_amplitude(j_a, j_b, jab, kappa_c, gc) ** 2
    return out
