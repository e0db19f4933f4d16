import math

import numpy as np
import pytest
from hypothesis import given, settings

from nonreciprocal import (
    Coupling,
    DuplicateLabel,
    DuplicatePair,
    InvalidCoupling,
    Mode,
    ModeKind,
    NegativeDamping,
    Network,
    Port,
    UnknownEndpoint,
    build_network,
    coupling_matrix,
)
from nonreciprocal.errors import NetworkError

from .conftest import networks, random_network


def isolator_parts(phi=1.5 * math.pi):
    modes = [Mode("a1"), Mode("a2"), Mode("b1"), Mode("b2"), Mode("sigma", ModeKind.EMITTER, 0.15)]
    couplings = [
        Coupling("a1", "a2", 0.5), Coupling("b1", "b2", 0.5),
        Coupling("a2", "sigma", 0.2), Coupling("b2", "sigma", 0.2),
        Coupling("a1", "b1", 0.5, phi),
    ]
    ports = [Port("a2", 1.0, "a"), Port("b2", 1.0, "b")]
    return modes, couplings, ports


def test_isolator_network_builds():
    net = build_network(*isolator_parts())
    assert net.labels == ["a1", "a2", "b1", "b2", "sigma"]
    assert net.port_names == ["a", "b"]
    assert len(net.couplings) == 5


def test_single_mode_reflector():
    net = build_network([Mode("c")], [], [Port("c", 1.0)])
    assert net.port_names == ["c"]
    assert coupling_matrix(net).shape == (1, 1)


def test_unknown_endpoint():
    modes, couplings, ports = isolator_parts()
    with pytest.raises(UnknownEndpoint):
        build_network(modes, couplings + [Coupling("a1", "x1", 1.0)], ports)
    with pytest.raises(UnknownEndpoint):
        build_network(modes, couplings, ports + [Port("x1", 1.0)])


@pytest.mark.parametrize(
    "mutate, error",
    [
        (lambda m, c, p: (m + [Mode("a1")], c, p), DuplicateLabel),
        (lambda m, c, p: (m, c + [Coupling("b1", "a1", 0.3)], p), DuplicatePair),
        (lambda m, c, p: (m, c, p + [Port("a2", 0.5, "a_again")]), DuplicateLabel),
        (lambda m, c, p: (m, c, p + [Port("a1", 0.5, "a")]), DuplicateLabel),
    ],
)
def test_structural_errors(mutate, error):
    with pytest.raises(error):
        build_network(*mutate(*isolator_parts()))


def test_value_errors():
    with pytest.raises(NegativeDamping):
        Mode("x", intrinsic_damping=-0.1)
    with pytest.raises(NegativeDamping):
        Port("x", 0.0)
    with pytest.raises(InvalidCoupling):
        Coupling("x", "x", 1.0)
    with pytest.raises(InvalidCoupling):
        Coupling("x", "y", -1.0)
    assert all(issubclass(e, NetworkError) for e in
               (NegativeDamping, InvalidCoupling, DuplicateLabel, DuplicatePair, UnknownEndpoint))


def test_phase_reduced_into_range():
    assert Coupling("x", "y", 1, -0.5 * math.pi).phase == pytest.approx(1.5 * math.pi)
    assert Coupling("x", "y", 1, 2 * math.pi).phase == 0.0


def test_coupling_matrix_places_phase():
    net = build_network(*isolator_parts(1.5 * math.pi))
    c = coupling_matrix(net)
    i, j = net.index("a1"), net.index("b1")
    assert c[i, j] == pytest.approx(0.5 * np.exp(1.5j * math.pi), abs=1e-16)
    assert c[j, i] == pytest.approx(0.5 * np.exp(-1.5j * math.pi), abs=1e-16)
    assert np.all(np.diag(c) == 0)


def test_inactive_couplings_give_zero_matrix():
    modes, couplings, ports = isolator_parts()
    from dataclasses import replace

    net = build_network(modes, [replace(c, active=False) for c in couplings], ports)
    assert not coupling_matrix(net).any()


@settings(max_examples=200, deadline=None)
@given(networks())
def test_coupling_matrix_exactly_hermitian(net):
    c = coupling_matrix(net)
    assert np.array_equal(c, c.conj().T)


def test_rebuild_is_structurally_equal(rng):
    net = random_network(rng, n_modes=5)
    again = build_network(list(net.modes), list(net.couplings), list(net.ports))
    assert again == net
    assert np.array_equal(coupling_matrix(again), coupling_matrix(net))


def test_with_active_and_pruned():
    net = build_network(*isolator_parts())
    off = net.with_active("sigma", "b2", False)
    assert not off.coupling("b2", "sigma").active
    assert net.coupling("b2", "sigma").active
    back = off.with_active("b2", "sigma", True)
    assert back == net
    # dropping both emitter links strands sigma, which pruning removes
    stranded = off.with_active("a2", "sigma", False).pruned()
    assert "sigma" not in stranded.labels
    assert stranded.port_names == ["a", "b"]


def test_network_is_immutable():
    net = build_network(*isolator_parts())
    with pytest.raises(Exception):
        net.modes = ()


def test_pruned_drops_zero_couplings_but_keeps_ports():
    modes = [Mode("x"), Mode("y"), Mode("dark")]
    couplings = [Coupling("x", "y", 0.0), Coupling("y", "dark", 0.0)]
    net = build_network(modes, couplings, [Port("x", 1.0), Port("y", 1.0)]).pruned()
    assert net.labels == ["x", "y"]
    assert net.couplings == ()
    assert net.port_names == ["x", "y"]
