"""Coupled-mode network model.

A network is a set of bosonic modes (cavities and the linearised emitter),
beam-splitter couplings carrying a phase, and the ports through which modes
leak into measured transmission lines.  Everything is in the rotating frame
with all rates in units of a reference external damping, so mode frequencies
are not stored: the only frequency is the probe detuning handed to the
solvers.

Networks are immutable and validated on construction.  Mode order and port
order fix the row/column order of every matrix built from them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    DuplicateLabel,
    DuplicatePair,
    InvalidCoupling,
    NegativeDamping,
    UnknownEndpoint,
    UnknownPort,
)

TWO_PI = 2.0 * math.pi


class ModeKind(str, enum.Enum):
    CAVITY = "cavity"
    EMITTER = "emitter"


@dataclass(frozen=True)
class Mode:
    label: str
    kind: ModeKind = ModeKind.CAVITY
    intrinsic_damping: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ModeKind(self.kind))
        object.__setattr__(self, "intrinsic_damping", float(self.intrinsic_damping))
        if not self.intrinsic_damping >= 0.0:
            raise NegativeDamping(
                f"mode {self.label!r}: intrinsic damping must be >= 0, got {self.intrinsic_damping}"
            )


@dataclass(frozen=True)
class Coupling:
    """Beam-splitter coupling ``magnitude * exp(i*phase) * a^dag b + h.c.``.

    The phase is reduced to ``[0, 2*pi)``.
    """

    a: str
    b: str
    magnitude: float
    phase: float = 0.0
    active: bool = True

    def __post_init__(self):
        object.__setattr__(self, "magnitude", float(self.magnitude))
        object.__setattr__(self, "phase", float(self.phase) % TWO_PI)
        object.__setattr__(self, "active", bool(self.active))
        if self.a == self.b:
            raise InvalidCoupling(f"coupling endpoints must differ, got {self.a!r} twice")
        if not self.magnitude >= 0.0:
            raise InvalidCoupling(
                f"coupling {self.a}-{self.b}: magnitude must be >= 0, got {self.magnitude}"
            )

    @property
    def pair(self) -> frozenset:
        return frozenset((self.a, self.b))

    @property
    def value(self) -> complex:
        """Matrix element placed at ``[a, b]``."""
        return self.magnitude * complex(math.cos(self.phase), math.sin(self.phase))


@dataclass(frozen=True)
class Port:
    """External channel attached to ``mode``; ``name`` defaults to the mode label."""

    mode: str
    external_damping: float
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "external_damping", float(self.external_damping))
        if not self.name:
            object.__setattr__(self, "name", self.mode)
        if not self.external_damping > 0.0:
            raise NegativeDamping(
                f"port {self.name!r}: external damping must be > 0, got {self.external_damping}"
            )


@dataclass(frozen=True)
class Network:
    modes: tuple[Mode, ...]
    couplings: tuple[Coupling, ...] = ()
    ports: tuple[Port, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        object.__setattr__(self, "couplings", tuple(self.couplings))
        object.__setattr__(self, "ports", tuple(self.ports))

        index: dict[str, int] = {}
        for i, mode in enumerate(self.modes):
            if mode.label in index:
                raise DuplicateLabel(f"duplicate mode label {mode.label!r}")
            index[mode.label] = i

        seen_pairs = set()
        for c in self.couplings:
            for end in (c.a, c.b):
                if end not in index:
                    raise UnknownEndpoint(f"coupling {c.a}-{c.b} references undeclared mode {end!r}")
            if c.pair in seen_pairs:
                raise DuplicatePair(f"more than one coupling between {c.a!r} and {c.b!r}")
            seen_pairs.add(c.pair)

        port_modes, port_names = set(), set()
        for p in self.ports:
            if p.mode not in index:
                raise UnknownEndpoint(f"port {p.name!r} attached to undeclared mode {p.mode!r}")
            if p.mode in port_modes:
                raise DuplicateLabel(f"mode {p.mode!r} carries more than one port")
            if p.name in port_names:
                raise DuplicateLabel(f"duplicate port name {p.name!r}")
            port_modes.add(p.mode)
            port_names.add(p.name)

        object.__setattr__(self, "_index", index)

    @property
    def labels(self) -> list[str]:
        return [m.label for m in self.modes]

    @property
    def port_names(self) -> list[str]:
        return [p.name for p in self.ports]

    def index(self, label: str) -> int:
        return self._index[label]

    def port_index(self, name: str) -> int:
        for i, p in enumerate(self.ports):
            if p.name == name:
                return i
        raise UnknownPort(f"no port named {name!r}; ports are {self.port_names}")

    def coupling(self, a: str, b: str) -> Coupling:
        pair = frozenset((a, b))
        for c in self.couplings:
            if c.pair == pair:
                return c
        raise KeyError(f"no coupling between {a!r} and {b!r}")

    def with_active(self, a: str, b: str, active: bool) -> "Network":
        """Copy of the network with the ``a``-``b`` coupling switched on or off."""
        target = self.coupling(a, b)
        couplings = [replace(c, active=active) if c is target else c for c in self.couplings]
        return replace(self, couplings=tuple(couplings))

    def pruned(self) -> "Network":
        """Drop inactive couplings, then every mode left without an active coupling
        together with its port.

        Two switch settings of the same hardware compare equal after pruning
        exactly when they expose the same active circuit.  Couplings of zero
        magnitude are dropped as well, along with any port-less mode they
        leave isolated: such a mode cannot affect the ports, and if it is
        undamped it would make the solve singular at its resonance.
        """
        active = [c for c in self.couplings if c.active]
        connected = {end for c in active for end in (c.a, c.b)}
        ports = [p for p in self.ports if p.mode in connected]
        live = [c for c in active if c.magnitude > 0.0]
        keep = {end for c in live for end in (c.a, c.b)} | {p.mode for p in ports}
        modes = [m for m in self.modes if m.label in connected and m.label in keep]
        return Network(tuple(modes), tuple(live), tuple(ports))


def build_network(modes, couplings=(), ports=()) -> Network:
    """Validate and assemble a :class:`Network`.

    Raises one of ``DuplicateLabel``, ``UnknownEndpoint``, ``DuplicatePair``,
    ``NegativeDamping`` or ``InvalidCoupling`` for bad input.
    """
    return Network(tuple(modes), tuple(couplings), tuple(ports))


def coupling_matrix(net: Network) -> np.ndarray:
    """Hermitian coupling matrix in network mode order with a zero diagonal.

    ``C[a, b] = magnitude * exp(i*phase)`` and ``C[b, a]`` is its conjugate;
    inactive couplings contribute nothing.
    """
    n = len(net.modes)
    c = np.zeros((n, n), dtype=complex)
    for cp in net.couplings:
        if not cp.active:
            continue
        i, j = net.index(cp.a), net.index(cp.b)
        v = cp.value
        c[i, j] = v
        c[j, i] = v.conjugate()
    return c


def damping_vectors(net: Network) -> tuple[np.ndarray, np.ndarray]:
    """Per-mode intrinsic and external damping rates."""
    gamma = np.array([m.intrinsic_damping for m in net.modes], dtype=float)
    kappa = np.zeros(len(net.modes))
    for p in net.ports:
        kappa[net.index(p.mode)] = p.external_damping
    return gamma, kappa


def port_coupling_matrix(net: Network) -> np.ndarray:
    """N x P real matrix with ``sqrt(kappa_p)`` at (port mode, port column)."""
    k = np.zeros((len(net.modes), len(net.ports)))
    for j, p in enumerate(net.ports):
        k[net.index(p.mode), j] = math.sqrt(p.external_damping)
    return k
