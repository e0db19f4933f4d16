"""Frequency-domain scattering from the quantum Langevin equations.

Sign conventions, fixed across the package:

* coherent couplings enter the equations of motion as ``-i C x``;
* drives enter as ``+sqrt(kappa) x_in``;
* outputs are ``x_out = x_in - sqrt(kappa) x``.

With ``A(w) = diag((gamma + kappa)/2 - i w) + i C`` this gives
``S(w) = I - K^T A(w)^{-1} K`` where ``K`` holds ``sqrt(kappa)`` at
(port mode, port).  ``S[dest, src]`` multiplies the field entering at
``src``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import SingularAtFrequency, UnknownPort
from .network import Network, coupling_matrix, damping_vectors, port_coupling_matrix

COND_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class DynamicalMatrix:
    frequency: float
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class ScatteringMatrix:
    frequency: float
    ports: tuple[str, ...]
    s: np.ndarray
    context: Any = None

    def _idx(self, name: str) -> int:
        try:
            return self.ports.index(name)
        except ValueError:
            raise UnknownPort(f"no port named {name!r}; ports are {list(self.ports)}") from None

    def amplitude(self, src: str, dest: str) -> complex:
        return complex(self.s[self._idx(dest), self._idx(src)])

    def transmission(self, src: str, dest: str) -> float:
        return abs(self.amplitude(src, dest)) ** 2

    def reflection(self, port: str) -> float:
        return abs(self.amplitude(port, port)) ** 2

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.s) ** 2


def _dynamical_stack(net: Network, omegas: np.ndarray) -> np.ndarray:
    gamma, kappa = damping_vectors(net)
    base = np.diag(0.5 * (gamma + kappa)).astype(complex) + 1j * coupling_matrix(net)
    n = len(net.modes)
    eye = np.eye(n)
    return base[None, :, :] - 1j * omegas[:, None, None] * eye[None, :, :]


def dynamical_matrix(net: Network, omega: float) -> DynamicalMatrix:
    """Left-hand side of the frequency-domain equations of motion at ``omega``."""
    mat = _dynamical_stack(net, np.array([float(omega)]))[0]
    return DynamicalMatrix(float(omega), mat)


def scattering_stack(net: Network, omegas: Sequence[float]):
    """Scattering matrices at every frequency of ``omegas``.

    Returns ``(s, singular)`` where ``s`` has shape ``(len(omegas), P, P)``
    and ``singular`` flags points whose dynamical matrix has condition number
    above ``COND_LIMIT``; those rows of ``s`` are NaN.  Each point is solved
    independently, so results do not depend on the order of ``omegas``.
    """
    omegas = np.asarray(omegas, dtype=float).reshape(-1)
    n, p = len(net.modes), len(net.ports)
    s = np.full((omegas.size, p, p), np.nan, dtype=complex)
    singular = np.zeros(omegas.size, dtype=bool)
    if p == 0 or omegas.size == 0:
        return s, singular

    a = _dynamical_stack(net, omegas)
    sv = np.linalg.svd(a, compute_uv=False)
    with np.errstate(divide="ignore"):
        cond = sv[:, 0] / sv[:, -1]
    singular = ~(cond <= COND_LIMIT)
    ok = ~singular
    if ok.any():
        k = port_coupling_matrix(net).astype(complex)
        x = np.linalg.solve(a[ok], np.broadcast_to(k, (int(ok.sum()), n, p)))
        s[ok] = np.eye(p) - np.swapaxes(k, 0, 1)[None, :, :] @ x
    return s, singular


def scattering_matrix(net: Network, omega: float) -> ScatteringMatrix:
    """Scattering matrix at a single frequency.

    Raises :class:`SingularAtFrequency` (carrying the near-null mode vector)
    when the dynamical matrix is numerically singular, e.g. at an undamped
    dark resonance.
    """
    s, singular = scattering_stack(net, [omega])
    if singular[0]:
        a = dynamical_matrix(net, omega).matrix
        _, sv, vh = np.linalg.svd(a)
        raise SingularAtFrequency(
            omega, vh[-1].conj(), f"condition number {sv[0] / max(sv[-1], 1e-300):.3g}"
        )
    return ScatteringMatrix(float(omega), tuple(net.port_names), s[0])


def _check_ports(net: Network, *names: str) -> None:
    for name in names:
        net.port_index(name)


def transmission(net: Network, omega: float, src: str, dest: str) -> float:
    """Probability ``|S[dest, src]|^2`` for a signal entering ``src``."""
    _check_ports(net, src, dest)
    if src == dest:
        raise ValueError("transmission needs two distinct ports; use reflection()")
    return scattering_matrix(net, omega).transmission(src, dest)


def reflection(net: Network, omega: float, port: str) -> float:
    _check_ports(net, port)
    return scattering_matrix(net, omega).reflection(port)
