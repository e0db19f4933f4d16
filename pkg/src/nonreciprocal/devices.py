"""Preset isolator and circulator topologies.

All three devices live on the same hardware graph: two rails ``a1-a2`` and
``b1-b2`` whose port cavities ``a2``/``b2`` both talk to the emitter
``sigma``.  The isolator closes the loop with a direct ``a1-b1`` link; the
symmetric circulator additionally hangs an auxiliary port cavity ``c2`` on
the emitter; the antisymmetric circulator swaps the direct link for a
transition cavity ``c1`` bridging ``a1`` and ``b1``.  Switching between them
only toggles couplings (see :func:`build_multifunctional` and :func:`switch`).

Besides the builders this module carries the closed-form scattering
elements of each device and the parameter conditions for ideal
nonreciprocity.  The closed forms are independent of the generic solver in
:mod:`nonreciprocal.scattering` and are checked against it in the tests.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field, fields, replace
from typing import Sequence

import numpy as np

from .errors import InfeasibleCondition, InvalidParams, SingularAtFrequency
from .network import Coupling, Mode, ModeKind, Network, Port
from .scattering import ScatteringMatrix, scattering_matrix

A1, A2, B1, B2, SIGMA, C1, C2 = "a1", "a2", "b1", "b2", "sigma", "c1", "c2"
PORTS = ("a", "b", "c")

HALF_PI = 0.5 * math.pi
THREE_HALF_PI = 1.5 * math.pi


class DeviceKind(str, enum.Enum):
    ISOLATOR = "isolator"
    SYMMETRIC_CIRCULATOR = "symmetric_circulator"
    ANTISYMMETRIC_CIRCULATOR = "antisymmetric_circulator"

    @property
    def n_ports(self) -> int:
        return 2 if self is DeviceKind.ISOLATOR else 3


class Direction(str, enum.Enum):
    A_TO_B = "a_to_b"
    B_TO_A = "b_to_a"


class Circulation(str, enum.Enum):
    COUNTERCLOCKWISE = "counterclockwise"  # a -> b -> c -> a
    CLOCKWISE = "clockwise"


_MAGNITUDES = ("j_a", "j_b", "j_ab", "j_ac", "j_bc", "g_a", "g_b", "g_c", "gamma_c", "gamma_e")

_RELEVANT = {
    DeviceKind.ISOLATOR: {"j_a", "j_b", "j_ab", "g_a", "g_b", "phi1", "gamma_c", "gamma_e"},
    DeviceKind.SYMMETRIC_CIRCULATOR: {
        "j_a", "j_b", "j_ab", "g_a", "g_b", "g_c", "phi1", "gamma_c", "gamma_e"
    },
    DeviceKind.ANTISYMMETRIC_CIRCULATOR: {
        "j_a", "j_b", "j_ac", "j_bc", "g_a", "g_b", "g_c", "phi2", "gamma_c", "gamma_e"
    },
}


@dataclass(frozen=True)
class DeviceParams:
    """Couplings, loop phases and damping rates of a preset device.

    ``kappa_c`` is either one external damping shared by every port or a
    per-port sequence in port order ``a, b[, c]``.
    """

    j_a: float = 0.0
    j_b: float = 0.0
    j_ab: float = 0.0
    j_ac: float = 0.0
    j_bc: float = 0.0
    g_a: float = 0.0
    g_b: float = 0.0
    g_c: float = 0.0
    phi1: float = 0.0
    phi2: float = 0.0
    gamma_c: float = 0.0
    gamma_e: float = 0.0
    kappa_c: float | tuple[float, ...] = 1.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "kappa_c":
                v = float(v) if np.ndim(v) == 0 else tuple(float(x) for x in v)
            else:
                v = float(v)
            object.__setattr__(self, f.name, v)

    def kappas(self, n: int) -> tuple[float, ...]:
        if isinstance(self.kappa_c, tuple):
            if len(self.kappa_c) != n:
                raise InvalidParams(f"expected {n} port dampings, got {len(self.kappa_c)}")
            return self.kappa_c
        return (self.kappa_c,) * n

    def validate(self, kind: DeviceKind) -> None:
        """Raise :class:`InvalidParams` unless the set is admissible for ``kind``."""
        kind = DeviceKind(kind)
        for name in _MAGNITUDES:
            if not getattr(self, name) >= 0.0:
                raise InvalidParams(f"{name} must be >= 0, got {getattr(self, name)}")
        for k in self.kappas(kind.n_ports):
            if not k > 0.0:
                raise InvalidParams(f"port damping must be > 0, got {k}")
        unused = [f.name for f in fields(self)
                  if f.name != "kappa_c" and f.name not in _RELEVANT[kind] and getattr(self, f.name) != 0.0]
        if unused:
            raise InvalidParams(f"{kind.value} does not use {', '.join(unused)}; they must be zero")

    def restricted(self, kind: DeviceKind) -> "DeviceParams":
        """Copy with every field that ``kind`` ignores set to zero."""
        kind = DeviceKind(kind)
        zeroed = {f.name: 0.0 for f in fields(self)
                  if f.name != "kappa_c" and f.name not in _RELEVANT[kind]}
        kap = self.kappa_c
        if isinstance(kap, tuple) and len(kap) != kind.n_ports:
            kap = kap[: kind.n_ports]
        return replace(self, kappa_c=kap, **zeroed)


# -- builders ---------------------------------------------------------------

def build_multifunctional(p: DeviceParams, kind: DeviceKind = DeviceKind.ISOLATOR) -> Network:
    """Full seven-mode, three-port hardware graph with couplings switched for ``kind``.

    Nothing is validated against ``kind`` here: the multifunctional chip holds
    every coupling at once and only the active flags differ.
    """
    k1, k2, k3 = p.kappas(3)
    cav, gc = ModeKind.CAVITY, p.gamma_c
    modes = (
        Mode(A1, cav, gc), Mode(A2, cav, gc), Mode(B1, cav, gc), Mode(B2, cav, gc),
        Mode(SIGMA, ModeKind.EMITTER, p.gamma_e), Mode(C2, cav, gc), Mode(C1, cav, gc),
    )
    couplings = (
        Coupling(A1, A2, p.j_a),
        Coupling(B1, B2, p.j_b),
        Coupling(A2, SIGMA, p.g_a),
        Coupling(B2, SIGMA, p.g_b),
        Coupling(A1, B1, p.j_ab, p.phi1),
        Coupling(C2, SIGMA, p.g_c),
        Coupling(A1, C1, p.j_ac),
        Coupling(B1, C1, p.j_bc, p.phi2),
    )
    ports = (Port(A2, k1, "a"), Port(B2, k2, "b"), Port(C2, k3, "c"))
    return switch(Network(modes, couplings, ports), kind)


_SWITCHES = {
    # (a1-b1, c2-sigma, a1-c1, b1-c1)
    DeviceKind.ISOLATOR: (True, False, False, False),
    DeviceKind.SYMMETRIC_CIRCULATOR: (True, True, False, False),
    DeviceKind.ANTISYMMETRIC_CIRCULATOR: (False, True, True, True),
}


def switch(net: Network, kind: DeviceKind) -> Network:
    """Activate/deactivate the switchable couplings of a multifunctional network."""
    flags = _SWITCHES[DeviceKind(kind)]
    for (a, b), on in zip(((A1, B1), (C2, SIGMA), (A1, C1), (B1, C1)), flags):
        net = net.with_active(a, b, on)
    return net


def build_device(kind: DeviceKind, p: DeviceParams) -> Network:
    """Network of one preset device, containing only the couplings it uses."""
    kind = DeviceKind(kind)
    p.validate(kind)
    kap = p.kappas(kind.n_ports)
    full = build_multifunctional(replace(p, kappa_c=kap + (1.0,) * (3 - len(kap))), kind)
    return full.pruned()


# -- closed forms -------------------------------------------------------------

@dataclass(frozen=True)
class ClosedFormContext:
    """Intermediate quantities of the closed-form scattering elements."""

    omega: float
    w_eff_a: complex
    w_eff_b: complex
    w_eff_c: complex
    w_eff_1: complex
    w_eff_2: complex
    d: complex | None
    d_prime: complex | None
    m_plus: complex
    m_minus: complex
    f_a: complex
    f_b: complex
    f_c: complex
    g_ac: complex
    g_bc: complex


def _div(num: complex, den: complex, omega: float, what: str) -> complex:
    if den == 0 or not cmath.isfinite(den):
        raise SingularAtFrequency(omega, None, f"closed form: {what} vanishes")
    return num / den


def _effective_frequencies(p: DeviceParams, omega: float, kap: Sequence[float]):
    w1 = complex(omega, 0.5 * p.gamma_c)
    w2 = complex(omega, 0.5 * p.gamma_e)
    wa = complex(omega, 0.5 * (kap[0] + p.gamma_c))
    wb = complex(omega, 0.5 * (kap[1] + p.gamma_c))
    wc = complex(omega, 0.5 * (kap[2] + p.gamma_c)) if len(kap) > 2 else complex("nan")
    return w1, w2, wa, wb, wc


def closed_form_context(kind: DeviceKind, p: DeviceParams, omega: float) -> ClosedFormContext:
    kind = DeviceKind(kind)
    kap = p.kappas(kind.n_ports)
    w1, w2, wa, wb, wc = _effective_frequencies(p, omega, kap)
    emitter_ab = _div(p.g_a * p.g_b, w2, omega, "omega_eff,2")
    if kind is DeviceKind.ANTISYMMETRIC_CIRCULATOR:
        dp = w1 * w1 - p.j_ac ** 2 - p.j_bc ** 2
        loop = _div(p.j_a * p.j_b * p.j_ac * p.j_bc, w1 * dp, omega, "omega_eff,1 * D'")
        m_plus = loop * cmath.exp(-1j * p.phi2) + emitter_ab
        m_minus = loop * cmath.exp(1j * p.phi2) + emitter_ab
        f_a = wa - p.j_a ** 2 / w1 * (1 + p.j_ac ** 2 / dp) - p.g_a ** 2 / w2
        f_b = wb - p.j_b ** 2 / w1 * (1 + p.j_bc ** 2 / dp) - p.g_b ** 2 / w2
        d = None
    else:
        d = w1 * w1 - p.j_ab ** 2
        loop = _div(p.j_a * p.j_b * p.j_ab, d, omega, "D")
        m_plus = loop * cmath.exp(1j * p.phi1) + emitter_ab
        m_minus = loop * cmath.exp(-1j * p.phi1) + emitter_ab
        f_a = wa - w1 * p.j_a ** 2 / d - p.g_a ** 2 / w2
        f_b = wb - w1 * p.j_b ** 2 / d - p.g_b ** 2 / w2
        dp = None
    f_c = wc - p.g_c ** 2 / w2
    return ClosedFormContext(
        float(omega), wa, wb, wc, w1, w2, d, dp, m_plus, m_minus, f_a, f_b, f_c,
        p.g_a * p.g_c / w2, p.g_b * p.g_c / w2,
    )


def analytic_s1(p: DeviceParams, omega: float) -> ScatteringMatrix:
    """Closed-form 2x2 isolator scattering matrix, ports ``(a, b)``."""
    ctx = closed_form_context(DeviceKind.ISOLATOR, p, omega)
    k1, k2 = p.kappas(2)
    den = ctx.m_plus * ctx.m_minus - ctx.f_a * ctx.f_b
    inv = _div(1.0, den, omega, "M+ M- - Fa Fb")
    root = math.sqrt(k1 * k2)
    s = np.array([
        [1 + 1j * k1 * ctx.f_b * inv, 1j * root * ctx.m_plus * inv],
        [1j * root * ctx.m_minus * inv, 1 + 1j * k2 * ctx.f_a * inv],
    ])
    return ScatteringMatrix(float(omega), PORTS[:2], s, ctx)


def _three_port(ctx: ClosedFormContext, kap: Sequence[float]) -> np.ndarray:
    k1, k2, k3 = kap
    mp, mm, fa, fb, fc, gac, gbc = (ctx.m_plus, ctx.m_minus, ctx.f_a, ctx.f_b, ctx.f_c,
                                    ctx.g_ac, ctx.g_bc)
    # the cross term couples both rails through the emitter: G_ac * G_bc
    den = fc * (mp * mm - fa * fb) + gbc * gbc * fa + gac * gac * fb + gac * gbc * (mp + mm)
    inv = _div(1.0, den, ctx.omega, "three-port determinant")
    r12, r13, r23 = math.sqrt(k1 * k2), math.sqrt(k1 * k3), math.sqrt(k2 * k3)
    s = np.empty((3, 3), dtype=complex)
    s[1, 0] = 1j * (fc * mm + gac * gbc) * r12 * inv
    s[0, 1] = 1j * (fc * mp + gac * gbc) * r12 * inv
    s[2, 0] = 1j * (fb * gac + mm * gbc) * r13 * inv
    s[0, 2] = 1j * (fb * gac + mp * gbc) * r13 * inv
    s[2, 1] = 1j * (fa * gbc + mp * gac) * r23 * inv
    s[1, 2] = 1j * (fa * gbc + mm * gac) * r23 * inv
    s[0, 0] = 1 + 1j * (fb * fc - gbc * gbc) * k1 * inv
    s[1, 1] = 1 + 1j * (fa * fc - gac * gac) * k2 * inv
    s[2, 2] = 1 + 1j * (fa * fb - mp * mm) * k3 * inv
    return s


def analytic_s2(p: DeviceParams, omega: float) -> ScatteringMatrix:
    """Closed-form 3x3 symmetric-circulator scattering matrix, ports ``(a, b, c)``."""
    ctx = closed_form_context(DeviceKind.SYMMETRIC_CIRCULATOR, p, omega)
    return ScatteringMatrix(float(omega), PORTS, _three_port(ctx, p.kappas(3)), ctx)


def analytic_s3(p: DeviceParams, omega: float) -> ScatteringMatrix:
    """Closed-form 3x3 antisymmetric-circulator scattering matrix.

    Same algebra as :func:`analytic_s2` with the transition-cavity
    replacements for the ``F`` and ``M`` terms.
    """
    ctx = closed_form_context(DeviceKind.ANTISYMMETRIC_CIRCULATOR, p, omega)
    return ScatteringMatrix(float(omega), PORTS, _three_port(ctx, p.kappas(3)), ctx)


ANALYTIC = {
    DeviceKind.ISOLATOR: analytic_s1,
    DeviceKind.SYMMETRIC_CIRCULATOR: analytic_s2,
    DeviceKind.ANTISYMMETRIC_CIRCULATOR: analytic_s3,
}


def analytic_smatrix(kind: DeviceKind, p: DeviceParams, omega: float) -> ScatteringMatrix:
    return ANALYTIC[DeviceKind(kind)](p, omega)


def isolator_optimal_amplitude(j_a: float, j_b: float, j_ab: float,
                               kappa_1: float, kappa_2: float) -> float:
    """Forward amplitude at ``omega = 0`` once the reverse path is cancelled (lossless cavities)."""
    return (8 * j_a * j_b * j_ab * math.sqrt(kappa_1 * kappa_2)
            / ((2 * j_a * j_b + j_ab * kappa_1) * (2 * j_a * j_b + j_ab * kappa_2)))


def isolator_lossy_amplitude(j_a: float, j_b: float, j_ab: float,
                             kappa_c: float, gamma_c: float) -> float:
    """Forward amplitude at ``omega = 0`` with cavity loss, equal port dampings."""
    j0 = 4 * j_ab ** 2 + gamma_c ** 2
    j1 = 8 * j_a * j_b * j_ab
    kt = kappa_c + gamma_c
    return 4 * j0 * j1 * kappa_c / ((j1 + 4 * gamma_c * j_a ** 2 + j0 * kt)
                                    * (j1 + 4 * gamma_c * j_b ** 2 + j0 * kt))


# -- optimality conditions ------------------------------------------------------

def _require_nonneg(**values: float) -> None:
    for name, v in values.items():
        if not v >= 0.0:
            raise InvalidParams(f"{name} must be >= 0, got {v}")


def isolator_conditions(j_a: float, j_b: float, kappa_c: float, gamma_e: float,
                        gamma_c: float = 0.0,
                        direction: Direction = Direction.A_TO_B) -> DeviceParams:
    """Parameters that cancel the reverse transmission at ``omega = 0``.

    The loop coupling is ``2 J_a J_b / kappa_c`` and the emitter couplings are
    equal, sized so the emitter path cancels the cavity loop.  With lossy
    cavities the emitter coupling is corrected for ``gamma_c``.
    """
    _require_nonneg(j_a=j_a, j_b=j_b, gamma_e=gamma_e, gamma_c=gamma_c)
    if not kappa_c > 0.0:
        raise InvalidParams(f"kappa_c must be > 0, got {kappa_c}")
    j_ab = 2 * j_a * j_b / kappa_c
    if gamma_c > 0.0:
        g = math.sqrt(2 * j_a * j_b * j_ab * gamma_e / (4 * j_ab ** 2 + gamma_c ** 2))
    else:
        g = math.sqrt(gamma_e * kappa_c) / 2
    phi1 = THREE_HALF_PI if Direction(direction) is Direction.A_TO_B else HALF_PI
    return DeviceParams(j_a=j_a, j_b=j_b, j_ab=j_ab, g_a=g, g_b=g, phi1=phi1,
                        gamma_c=gamma_c, gamma_e=gamma_e, kappa_c=kappa_c)


def symmetric_circulator_conditions(j_a: float, j_b: float, kappa_c: float, gamma_e: float,
                                    g: float,
                                    direction: Circulation = Circulation.COUNTERCLOCKWISE
                                    ) -> DeviceParams:
    """Ideal-circulation parameters at ``omega = 0`` for the auxiliary-cavity circulator.

    ``g`` (emitter to both rails) is a free choice; the auxiliary coupling
    follows from it and is only real while ``4 g^2 >= gamma_e kappa_c``.
    """
    _require_nonneg(j_a=j_a, j_b=j_b, gamma_e=gamma_e, g=g)
    if not kappa_c > 0.0:
        raise InvalidParams(f"kappa_c must be > 0, got {kappa_c}")
    gc2 = (4 * g * g - gamma_e * kappa_c) / 4
    if gc2 < 0.0:
        raise InfeasibleCondition(
            f"4 g^2 = {4 * g * g:.6g} < gamma_e kappa_c = {gamma_e * kappa_c:.6g}: "
            "auxiliary coupling g_c would be imaginary"
        )
    phi1 = THREE_HALF_PI if Circulation(direction) is Circulation.COUNTERCLOCKWISE else HALF_PI
    return DeviceParams(j_a=j_a, j_b=j_b, j_ab=2 * j_a * j_b / kappa_c, g_a=g, g_b=g,
                        g_c=math.sqrt(gc2), phi1=phi1, gamma_e=gamma_e, kappa_c=kappa_c)


def dual_frequency_params(kind: DeviceKind, kappa_c: float, gamma_e: float = 0.0,
                          phase: float = HALF_PI) -> DeviceParams:
    """Circulator parameters giving ideal circulation at ``omega = +-1``.

    With ``phase = pi/2`` the symmetric device circulates counterclockwise at
    both frequencies; the antisymmetric device circulates counterclockwise at
    ``omega = -1`` and clockwise at ``omega = +1``.
    """
    kind = DeviceKind(kind)
    _require_nonneg(gamma_e=gamma_e)
    if not kappa_c > 0.0:
        raise InvalidParams(f"kappa_c must be > 0, got {kappa_c}")
    if kind is DeviceKind.ISOLATOR:
        raise InvalidParams("dual-frequency operation is defined for circulators only")
    if kappa_c >= 2.0:
        raise InfeasibleCondition(f"kappa_c = {kappa_c} >= 2 leaves no rail coupling J_a, J_b")
    g = math.sqrt(kappa_c * (kappa_c + gamma_e) / 4)
    g_c = math.sqrt((4 + kappa_c ** 2) / 4)
    if kind is DeviceKind.SYMMETRIC_CIRCULATOR:
        j = math.sqrt((4 - kappa_c ** 2) / 4)
        return DeviceParams(j_a=j, j_b=j, j_ab=kappa_c / 2, g_a=g, g_b=g, g_c=g_c,
                            phi1=phase, gamma_e=gamma_e, kappa_c=kappa_c)
    j = math.sqrt((2 - kappa_c) / 2)
    jt = math.sqrt(kappa_c / (2 + kappa_c))
    return DeviceParams(j_a=j, j_b=j, j_ac=jt, j_bc=jt, g_a=g, g_b=g, g_c=g_c,
                        phi2=phase, gamma_e=gamma_e, kappa_c=kappa_c)


# -- condition reports ----------------------------------------------------------

@dataclass(frozen=True)
class ConditionReport:
    name: str
    satisfied: bool
    residual: float
    tolerance: float
    derived: dict = field(default_factory=dict)

    @classmethod
    def from_residual(cls, name: str, residual: float, tolerance: float, **derived: float):
        residual = abs(float(residual))
        return cls(name, residual <= tolerance, residual, tolerance, dict(derived))


def _phase_distance(phi: float, target: float) -> float:
    d = (phi - target) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def _route_report(net: Network, omega: float, forward: Sequence[tuple[str, str]],
                  zero_tol: float, label: str) -> ConditionReport:
    """Max transmission over every route not listed in ``forward``."""
    s = scattering_matrix(net, omega)
    ports = s.ports
    derived, worst = {}, 0.0
    for src in ports:
        for dest in ports:
            if src == dest:
                continue
            t = s.transmission(src, dest)
            derived[f"T_{src}_{dest}"] = t
            if (src, dest) not in forward:
                worst = max(worst, t)
    return ConditionReport.from_residual(label, worst, zero_tol, **derived)


def check_isolator(p: DeviceParams, tol: float = 1e-9, zero_tol: float = 1e-12) -> list[ConditionReport]:
    """Evaluate the ideal-isolation conditions at ``omega = 0`` for ``p``."""
    p.validate(DeviceKind.ISOLATOR)
    k1, k2 = p.kappas(2)
    kc = 0.5 * (k1 + k2)
    reports = [
        ConditionReport.from_residual("kappa_c1 = kappa_c2", k1 - k2, tol),
        ConditionReport.from_residual("g_a = g_b", p.g_a - p.g_b, tol),
    ]
    j_ab_req = 2 * p.j_a * p.j_b / kc
    reports.append(ConditionReport.from_residual(
        "J_ab = 2 J_a J_b / kappa_c", p.j_ab - j_ab_req, tol, J_ab_required=j_ab_req))
    den = 4 * p.j_ab ** 2 + p.gamma_c ** 2
    g2_req = 2 * p.j_a * p.j_b * p.j_ab * p.gamma_e / den if den > 0 else 0.0
    reports.append(ConditionReport.from_residual(
        "g^2 = 2 J_a J_b J_ab gamma_e / (4 J_ab^2 + gamma_c^2)", p.g_a * p.g_b - g2_req, tol,
        g_required=math.sqrt(g2_req)))
    d_ab = _phase_distance(p.phi1, THREE_HALF_PI)
    d_ba = _phase_distance(p.phi1, HALF_PI)
    direction = Direction.A_TO_B if d_ab <= d_ba else Direction.B_TO_A
    reports.append(ConditionReport.from_residual(
        "phi1 = 3pi/2 (a->b) or pi/2 (b->a)", min(d_ab, d_ba), tol,
        a_to_b=float(direction is Direction.A_TO_B)))
    reports.append(ConditionReport(
        "nonreciprocity requires gamma_e > 0", p.gamma_e > 0.0,
        0.0 if p.gamma_e > 0.0 else 1.0, 0.0, {"gamma_e": p.gamma_e}))
    forward = [("a", "b")] if direction is Direction.A_TO_B else [("b", "a")]
    reports.append(_route_report(build_device(DeviceKind.ISOLATOR, p), 0.0, forward, zero_tol,
                                 "reverse transmission vanishes at omega=0"))
    return reports


CCW_ROUTES = (("a", "b"), ("b", "c"), ("c", "a"))
CW_ROUTES = (("b", "a"), ("c", "b"), ("a", "c"))


def check_symmetric_circulator(p: DeviceParams, tol: float = 1e-9,
                               zero_tol: float = 1e-12) -> list[ConditionReport]:
    """Evaluate the ideal-circulation conditions at ``omega = 0``."""
    kind = DeviceKind.SYMMETRIC_CIRCULATOR
    p.validate(kind)
    k = p.kappas(3)
    kc = sum(k) / 3
    g = 0.5 * (p.g_a + p.g_b)
    reports = [
        ConditionReport.from_residual("kappa_c1 = kappa_c2 = kappa_c3", max(k) - min(k), tol),
        ConditionReport.from_residual("g_a = g_b", p.g_a - p.g_b, tol),
    ]
    j_ab_req = 2 * p.j_a * p.j_b / kc
    reports.append(ConditionReport.from_residual(
        "J_ab = 2 J_a J_b / kappa_c", p.j_ab - j_ab_req, tol, J_ab_required=j_ab_req))
    gc2_req = (4 * g * g - p.gamma_e * kc) / 4
    reports.append(ConditionReport(
        "4 g^2 >= gamma_e kappa_c", gc2_req >= 0.0, max(0.0, -gc2_req), 0.0,
        {"g_c_squared_required": gc2_req}))
    reports.append(ConditionReport.from_residual(
        "g_c^2 = (4 g^2 - gamma_e kappa_c) / 4", p.g_c ** 2 - gc2_req, tol,
        predicted_T_bc=1 - p.gamma_e * kc / (4 * g * g) if g > 0 else float("nan")))
    d_ccw = _phase_distance(p.phi1, THREE_HALF_PI)
    d_cw = _phase_distance(p.phi1, HALF_PI)
    ccw = d_ccw <= d_cw
    reports.append(ConditionReport.from_residual(
        "phi1 = 3pi/2 (counterclockwise) or pi/2 (clockwise)", min(d_ccw, d_cw), tol,
        counterclockwise=float(ccw)))
    reports.append(_route_report(build_device(kind, p), 0.0, CCW_ROUTES if ccw else CW_ROUTES,
                                 zero_tol, "reverse circulation vanishes at omega=0"))
    return reports


def check_dual_frequency(kind: DeviceKind, p: DeviceParams, tol: float = 1e-9,
                         zero_tol: float = 1e-12) -> list[ConditionReport]:
    """Compare ``p`` against the dual-frequency set and test circulation at ``omega = +-1``."""
    kind = DeviceKind(kind)
    p.validate(kind)
    kc = p.kappas(3)[0]
    phase = p.phi1 if kind is DeviceKind.SYMMETRIC_CIRCULATOR else p.phi2
    reports = [ConditionReport.from_residual(
        "kappa_c1 = kappa_c2 = kappa_c3", max(p.kappas(3)) - min(p.kappas(3)), tol)]
    target = dual_frequency_params(kind, kc, p.gamma_e, phase)
    for f in fields(p):
        if f.name in _RELEVANT[kind] and f.name not in ("phi1", "phi2", "gamma_c", "gamma_e"):
            want = getattr(target, f.name)
            reports.append(ConditionReport.from_residual(
                f"{f.name} = dual-frequency value", getattr(p, f.name) - want, tol, required=want))
    reports.append(ConditionReport.from_residual("gamma_c = 0", p.gamma_c, tol))
    d_half = _phase_distance(phase, HALF_PI)
    d_three = _phase_distance(phase, THREE_HALF_PI)
    reports.append(ConditionReport.from_residual(
        "loop phase = pi/2 or 3pi/2", min(d_half, d_three), tol))
    net = build_device(kind, p)
    half = d_half <= d_three
    for omega in (-1.0, 1.0):
        if kind is DeviceKind.SYMMETRIC_CIRCULATOR:
            ccw = half
        else:
            ccw = half == (omega < 0)
        reports.append(_route_report(
            net, omega, CCW_ROUTES if ccw else CW_ROUTES, zero_tol,
            f"{'counterclockwise' if ccw else 'clockwise'} circulation at omega={omega:+g}"))
    return reports


def check_device(kind: DeviceKind, p: DeviceParams, mode: str = "optimal",
                 tol: float = 1e-9, zero_tol: float = 1e-12) -> list[ConditionReport]:
    """Dispatch to the condition set for ``kind``.

    ``mode`` is ``"optimal"`` (single-frequency conditions at ``omega = 0``)
    or ``"dual_frequency"``.  The antisymmetric circulator only has the
    dual-frequency set.
    """
    kind = DeviceKind(kind)
    if mode == "dual_frequency" or kind is DeviceKind.ANTISYMMETRIC_CIRCULATOR:
        return check_dual_frequency(kind, p, tol, zero_tol)
    if mode != "optimal":
        raise InvalidParams(f"unknown condition mode {mode!r}")
    if kind is DeviceKind.ISOLATOR:
        return check_isolator(p, tol, zero_tol)
    return check_symmetric_circulator(p, tol, zero_tol)
