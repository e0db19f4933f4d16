import math

import numpy as np
import pytest
from hypothesis import strategies as st

from nonreciprocal import Coupling, DeviceKind, DeviceParams, Mode, ModeKind, Network, Port

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    """Record one pass/fail line for the acceptance summary, then assert."""

    def _record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number:>2}: {title}  {detail}".rstrip())
        assert ok, f"criterion {number} failed: {title} {detail}"

    return _record


def random_network(rng, n_modes=None, lossless=False, phases=None, port_prob=0.5,
                   edge_prob=0.6):
    """Random connected network with at least one port.

    ``phases`` restricts coupling phases to the given values.
    """
    n = n_modes or int(rng.integers(1, 7))
    modes = [Mode(f"m{i}", ModeKind.CAVITY, 0.0 if lossless else float(rng.uniform(0, 1)))
             for i in range(n)]
    edges = set()
    for i in range(1, n):
        edges.add((int(rng.integers(0, i)), i))  # spanning tree keeps it connected
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                edges.add((i, j))
    couplings = []
    for i, j in sorted(edges):
        phase = float(rng.choice(phases)) if phases is not None else float(rng.uniform(0, 2 * math.pi))
        couplings.append(Coupling(f"m{i}", f"m{j}", float(rng.uniform(0.05, 2)), phase))
    port_modes = [i for i in range(n) if rng.random() < port_prob] or [0]
    ports = [Port(f"m{i}", float(rng.uniform(0.2, 2)), f"p{i}") for i in port_modes]
    return Network(tuple(modes), tuple(couplings), tuple(ports))


def random_device_params(rng, kind):
    u = lambda lo, hi: float(rng.uniform(lo, hi))
    d = dict(j_a=u(.05, 2), j_b=u(.05, 2), g_a=u(.05, 2), g_b=u(.05, 2),
             gamma_c=u(0, .5), gamma_e=u(0, .5))
    kind = DeviceKind(kind)
    if kind is DeviceKind.ISOLATOR:
        d.update(j_ab=u(.05, 2), phi1=u(0, 2 * math.pi), kappa_c=(u(.2, 2), u(.2, 2)))
    elif kind is DeviceKind.SYMMETRIC_CIRCULATOR:
        d.update(j_ab=u(.05, 2), g_c=u(.05, 2), phi1=u(0, 2 * math.pi),
                 kappa_c=(u(.2, 2), u(.2, 2), u(.2, 2)))
    else:
        d.update(j_ac=u(.05, 2), j_bc=u(.05, 2), g_c=u(.05, 2), phi2=u(0, 2 * math.pi),
                 kappa_c=(u(.2, 2), u(.2, 2), u(.2, 2)))
    return DeviceParams(**d)


@st.composite
def networks(draw, lossless=False, phases=None):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_network(np.random.default_rng(seed), lossless=lossless, phases=phases)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)
