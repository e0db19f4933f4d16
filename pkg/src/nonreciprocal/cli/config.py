"""Run configuration: JSON schema, validation and network (de)serialisation.

A configuration names exactly one source, either a preset ``device`` with
its ``params`` or a raw ``network`` block, plus optional ``grid``,
``outputs``, ``conditions``, ``scan`` and ``tolerances``.  Phases may be
written as numbers (radians) or as strings like ``"3pi/2"``.  See the
README for the full key list.
"""

from __future__ import annotations

import json
import logging
import math
import re
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from ..analysis import FrequencyGrid
from ..devices import (
    Circulation,
    DeviceKind,
    DeviceParams,
    Direction,
    build_device,
    dual_frequency_params,
    isolator_conditions,
    symmetric_circulator_conditions,
)
from ..errors import NonreciprocalError, ParseError, SchemaError
from ..network import Coupling, Mode, Network, Port

log = logging.getLogger(__name__)

OUTPUTS = ("spectrum", "conditions", "compare", "symmetry", "scan")
DEFAULT_TOL = 1e-9
DEFAULT_ZERO_TOL = 1e-12

_TOP_KEYS = {"name", "device", "params", "network", "grid", "outputs", "conditions",
             "scan", "tolerances", "out"}
_PARAM_KEYS = {f.name for f in fields(DeviceParams)}
_DERIVE_KEYS = {
    (DeviceKind.ISOLATOR, "optimal"): {"j_a", "j_b", "kappa_c", "gamma_e", "gamma_c", "direction"},
    (DeviceKind.SYMMETRIC_CIRCULATOR, "optimal"): {"j_a", "j_b", "kappa_c", "gamma_e", "g",
                                                   "direction"},
    (DeviceKind.SYMMETRIC_CIRCULATOR, "dual_frequency"): {"kappa_c", "gamma_e", "phase"},
    (DeviceKind.ANTISYMMETRIC_CIRCULATOR, "dual_frequency"): {"kappa_c", "gamma_e", "phase"},
}

_PI_RE = re.compile(r"^\s*([-+]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


@dataclass(frozen=True)
class ScanSpec:
    j_ab: tuple[float, ...]
    gamma_c: tuple[float, ...]
    omega: float = 0.0


@dataclass(frozen=True)
class RunConfig:
    name: str
    kind: DeviceKind | None
    params: DeviceParams | None
    network: Network | None
    grid: FrequencyGrid
    outputs: tuple[str, ...]
    conditions: str = "optimal"
    derive: str | None = None
    scan: ScanSpec | None = None
    tolerance: float = DEFAULT_TOL
    zero_tolerance: float = DEFAULT_ZERO_TOL
    out: str | None = None

    def resolved_network(self) -> Network:
        return self.network if self.network is not None else build_device(self.kind, self.params)


def parse_phase(value: Any, where: str) -> float:
    if isinstance(value, bool):
        raise SchemaError("expected a phase", where)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _PI_RE.match(value)
        if m:
            coeff = m.group(1)
            coeff = 1.0 if coeff in ("", "+") else -1.0 if coeff == "-" else float(coeff)
            div = float(m.group(2)) if m.group(2) else 1.0
            return coeff * math.pi / div
        try:
            return float(value)
        except ValueError:
            pass
    raise SchemaError(f"cannot read {value!r} as a phase (radians or e.g. '3pi/2')", where)


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"expected a number, got {value!r}", where)
    return float(value)


def _check_keys(block: dict, allowed: set, where: str, strict: bool) -> dict:
    if not isinstance(block, dict):
        raise SchemaError("expected an object", where)
    unknown = sorted(set(block) - allowed)
    if unknown:
        if strict:
            raise SchemaError(f"unknown field(s) {', '.join(unknown)}", where)
        log.warning("%s: ignoring unknown field(s) %s", where or "config", ", ".join(unknown))
        block = {k: v for k, v in block.items() if k in allowed}
    return block


def _grid(value: Any, where: str) -> FrequencyGrid:
    if isinstance(value, (list, tuple)) and len(value) == 3:
        start, stop, points = value
    elif isinstance(value, dict):
        value = _check_keys(value, {"start", "stop", "points"}, where, True)
        try:
            start, stop, points = value["start"], value["stop"], value["points"]
        except KeyError as exc:
            raise SchemaError(f"missing {exc.args[0]!r}", where) from None
    else:
        raise SchemaError("expected {start, stop, points} or [start, stop, points]", where)
    start, stop = _number(start, where + ".start"), _number(stop, where + ".stop")
    if isinstance(points, bool) or not isinstance(points, int):
        raise SchemaError(f"points must be an integer, got {points!r}", where + ".points")
    try:
        return FrequencyGrid(start, stop, points)
    except NonreciprocalError as exc:
        raise SchemaError(str(exc), where) from None


def parse_grid_flag(text: str) -> FrequencyGrid:
    """``"a,b,n"`` from the ``--grid`` flag."""
    parts = text.split(",")
    if len(parts) != 3:
        raise SchemaError("expected start,stop,points", "--grid")
    try:
        return FrequencyGrid(float(parts[0]), float(parts[1]), int(parts[2]))
    except (ValueError, NonreciprocalError) as exc:
        raise SchemaError(str(exc), "--grid") from None


def _values(value: Any, where: str) -> tuple[float, ...]:
    if isinstance(value, list):
        return tuple(_number(v, f"{where}[{i}]") for i, v in enumerate(value))
    g = _grid(value, where)
    return tuple(float(x) for x in np.linspace(g.start, g.stop, g.points))


def _kappa(value: Any, where: str):
    if isinstance(value, list):
        return tuple(_number(v, f"{where}[{i}]") for i, v in enumerate(value))
    return _number(value, where)


def _params(kind: DeviceKind, block: Any, strict: bool) -> tuple[DeviceParams, str | None]:
    where = "params"
    if not isinstance(block, dict):
        raise SchemaError("expected an object", where)
    derive = block.get("derive", False)
    if derive is True:
        derive = "optimal"
    if derive is False or derive is None:
        block = _check_keys(block, _PARAM_KEYS | {"derive"}, where, strict)
        values = {}
        for k, v in block.items():
            if k == "derive":
                continue
            w = f"{where}.{k}"
            if k in ("phi1", "phi2"):
                values[k] = parse_phase(v, w)
            elif k == "kappa_c":
                values[k] = _kappa(v, w)
            else:
                values[k] = _number(v, w)
        return DeviceParams(**values), None

    if (kind, derive) not in _DERIVE_KEYS:
        raise SchemaError(f"derive={derive!r} is not available for {kind.value}", where + ".derive")
    allowed = _DERIVE_KEYS[(kind, derive)]
    block = _check_keys(block, allowed | {"derive"}, where, strict)
    required = allowed - {"gamma_c", "direction", "phase", "gamma_e"}
    missing = sorted(required - set(block))
    if missing:
        raise SchemaError(f"derive={derive!r} needs {', '.join(missing)}", where)
    num = {k: _number(v, f"{where}.{k}") for k, v in block.items()
           if k not in ("derive", "direction", "phase")}
    if derive == "dual_frequency":
        phase = parse_phase(block.get("phase", "pi/2"), where + ".phase")
        return dual_frequency_params(kind, num["kappa_c"], num.get("gamma_e", 0.0), phase), derive
    direction = block.get("direction")
    try:
        if kind is DeviceKind.ISOLATOR:
            return isolator_conditions(
                num["j_a"], num["j_b"], num["kappa_c"], num.get("gamma_e", 0.0),
                num.get("gamma_c", 0.0), Direction(direction or Direction.A_TO_B)), derive
        return symmetric_circulator_conditions(
            num["j_a"], num["j_b"], num["kappa_c"], num.get("gamma_e", 0.0), num["g"],
            Circulation(direction or Circulation.COUNTERCLOCKWISE)), derive
    except ValueError as exc:
        if isinstance(exc, NonreciprocalError):
            raise
        raise SchemaError(str(exc), where + ".direction") from None


def network_from_dict(block: Any, strict: bool = True) -> Network:
    """Build a :class:`Network` from its JSON description."""
    block = _check_keys(block, {"modes", "couplings", "ports"}, "network", strict)
    modes, couplings, ports = [], [], []
    for i, m in enumerate(block.get("modes", [])):
        w = f"network.modes[{i}]"
        m = _check_keys(m, {"label", "kind", "intrinsic_damping"}, w, strict)
        if "label" not in m:
            raise SchemaError("missing 'label'", w)
        modes.append((str(m["label"]), m.get("kind", "cavity"),
                      _number(m.get("intrinsic_damping", 0.0), w + ".intrinsic_damping"), w))
    for i, c in enumerate(block.get("couplings", [])):
        w = f"network.couplings[{i}]"
        c = _check_keys(c, {"a", "b", "magnitude", "phase", "active"}, w, strict)
        for k in ("a", "b", "magnitude"):
            if k not in c:
                raise SchemaError(f"missing {k!r}", w)
        couplings.append((str(c["a"]), str(c["b"]), _number(c["magnitude"], w + ".magnitude"),
                          parse_phase(c.get("phase", 0.0), w + ".phase"),
                          bool(c.get("active", True)), w))
    for i, p in enumerate(block.get("ports", [])):
        w = f"network.ports[{i}]"
        p = _check_keys(p, {"mode", "external_damping", "name"}, w, strict)
        for k in ("mode", "external_damping"):
            if k not in p:
                raise SchemaError(f"missing {k!r}", w)
        ports.append((str(p["mode"]), _number(p["external_damping"], w + ".external_damping"),
                      str(p.get("name", "")), w))
    try:
        built_modes = []
        for label, kind, damping, w in modes:
            try:
                built_modes.append(Mode(label, kind, damping))
            except ValueError as exc:
                if isinstance(exc, NonreciprocalError):
                    raise
                raise SchemaError(str(exc), w + ".kind") from None
        return Network(
            tuple(built_modes),
            tuple(Coupling(a, b, mag, ph, act) for a, b, mag, ph, act, _ in couplings),
            tuple(Port(mode, k, name) for mode, k, name, _ in ports),
        )
    except SchemaError:
        raise
    except NonreciprocalError as exc:
        raise SchemaError(f"{type(exc).__name__}: {exc}", "network") from None


def network_to_dict(net: Network) -> dict:
    return {
        "modes": [{"label": m.label, "kind": m.kind.value, "intrinsic_damping": m.intrinsic_damping}
                  for m in net.modes],
        "couplings": [{"a": c.a, "b": c.b, "magnitude": c.magnitude, "phase": c.phase,
                       "active": c.active} for c in net.couplings],
        "ports": [{"mode": p.mode, "external_damping": p.external_damping, "name": p.name}
                  for p in net.ports],
    }


def parse_config(text: str, strict: bool = True, name: str = "") -> RunConfig:
    """Parse and validate a JSON run configuration, materialising defaults."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    doc = _check_keys(doc, _TOP_KEYS, "", strict)

    has_device, has_network = "device" in doc, "network" in doc
    if has_device == has_network:
        raise SchemaError("exactly one of 'device' or 'network' is required")

    kind = params = network = derive = None
    if has_device:
        try:
            kind = DeviceKind(doc["device"])
        except ValueError:
            choices = ", ".join(k.value for k in DeviceKind)
            raise SchemaError(f"unknown device {doc['device']!r} (choose {choices})", "device") from None
        params, derive = _params(kind, doc.get("params", {}), strict)
        try:
            params.validate(kind)
        except NonreciprocalError as exc:
            raise SchemaError(str(exc), "params") from None
    else:
        if "params" in doc:
            raise SchemaError("'params' only applies to a 'device'", "params")
        network = network_from_dict(doc["network"], strict)

    grid = _grid(doc["grid"], "grid") if "grid" in doc else FrequencyGrid()

    outputs = doc.get("outputs", ["spectrum"])
    if isinstance(outputs, str):
        outputs = [outputs]
    if not isinstance(outputs, list) or not outputs:
        raise SchemaError("expected a non-empty list", "outputs")
    for o in outputs:
        if o not in OUTPUTS:
            raise SchemaError(f"unknown output {o!r} (choose {', '.join(OUTPUTS)})", "outputs")
        if o in ("conditions", "compare", "scan") and kind is None:
            raise SchemaError(f"output {o!r} needs a preset device", "outputs")

    conditions = doc.get("conditions", "dual_frequency" if derive == "dual_frequency" else "optimal")
    if conditions not in ("optimal", "dual_frequency"):
        raise SchemaError("expected 'optimal' or 'dual_frequency'", "conditions")

    scan = None
    if "scan" in doc:
        if kind is not DeviceKind.ISOLATOR:
            raise SchemaError("scans are defined for the isolator only", "scan")
        s = _check_keys(doc["scan"], {"j_ab", "gamma_c", "omega"}, "scan", strict)
        for k in ("j_ab", "gamma_c"):
            if k not in s:
                raise SchemaError(f"missing {k!r}", "scan")
        scan = ScanSpec(_values(s["j_ab"], "scan.j_ab"), _values(s["gamma_c"], "scan.gamma_c"),
                        _number(s.get("omega", 0.0), "scan.omega"))
    elif "scan" in outputs:
        raise SchemaError("output 'scan' needs a 'scan' block", "outputs")

    tol = _check_keys(doc.get("tolerances", {}), {"relative", "zero"}, "tolerances", strict)
    out = doc.get("out")
    if out is not None and not isinstance(out, str):
        raise SchemaError("expected a path string", "out")
    return RunConfig(
        name=str(doc.get("name", name)),
        kind=kind, params=params, network=network, grid=grid, outputs=tuple(outputs),
        conditions=conditions, derive=derive, scan=scan,
        tolerance=_number(tol.get("relative", DEFAULT_TOL), "tolerances.relative"),
        zero_tolerance=_number(tol.get("zero", DEFAULT_ZERO_TOL), "tolerances.zero"),
        out=out,
    )


def shipped_configs() -> list[str]:
    root = resources.files("nonreciprocal") / "configs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_config(ref: str, strict: bool = True) -> RunConfig:
    """Load ``ref`` as a file path, or as the name of a shipped configuration."""
    path = Path(ref)
    if path.is_file():
        return parse_config(path.read_text(), strict, name=path.stem)
    shipped = resources.files("nonreciprocal") / "configs" / f"{ref}.json"
    if shipped.is_file():
        return parse_config(shipped.read_text(), strict, name=ref)
    raise FileNotFoundError(f"no config file {ref!r} and no shipped config of that name "
                            f"(shipped: {', '.join(shipped_configs())})")
