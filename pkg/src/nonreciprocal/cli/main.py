"""Command-line entry point.

Subcommands read one JSON configuration (a path or the name of a shipped
config) and write one table to ``--out`` or stdout::

    nonreciprocal sweep    --config fig2c
    nonreciprocal check    --config fig5d
    nonreciprocal compare  --config fig2c --grid -1,1,21
    nonreciprocal symmetry --config fig8a
    nonreciprocal scan     --config fig3
    nonreciprocal device   --config fig8a
    nonreciprocal run      --config fig6a --out results/

Exit status is 0 on success, 1 when a check or comparison fails its
tolerance and 2 on configuration, solver or I/O errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from ..analysis import classify_symmetry, compare_closed_form, isolator_loss_scan, sweep
from ..devices import check_device
from ..errors import NonreciprocalError, SchemaError
from . import output
from .config import RunConfig, load_config, network_to_dict, parse_grid_flag, shipped_configs

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _meta(cfg: RunConfig, **extra) -> dict:
    meta = {"config": cfg.name or None,
            "device": cfg.kind.value if cfg.kind else "network"}
    meta.update(extra)
    return meta


def _need_device(cfg: RunConfig, what: str) -> None:
    if cfg.kind is None:
        raise SchemaError(f"'{what}' needs a preset device, not a raw network", "device")


def do_sweep(cfg: RunConfig) -> tuple[str, int]:
    g = cfg.grid
    spec = sweep(cfg.resolved_network(), g)
    head = output.header("sweep", **_meta(cfg, grid=f"{g.start!r},{g.stop!r},{g.points}",
                                          gaps=len(spec.gaps)))
    return output.spectrum_table(spec, head), EXIT_OK


def do_check(cfg: RunConfig) -> tuple[str, int]:
    _need_device(cfg, "check")
    reports = check_device(cfg.kind, cfg.params, cfg.conditions, cfg.tolerance, cfg.zero_tolerance)
    head = output.header("check", **_meta(cfg, conditions=cfg.conditions))
    ok = all(r.satisfied for r in reports)
    return output.condition_lines(reports, head), EXIT_OK if ok else EXIT_FAIL


def do_compare(cfg: RunConfig) -> tuple[str, int]:
    _need_device(cfg, "compare")
    records = list(compare_closed_form(cfg.kind, cfg.params, sorted(cfg.grid.omegas)))
    errs = [r[4] for r in records if r[4] == r[4]]
    worst = max(errs) if errs else float("nan")
    skipped = len(records) - len(errs)
    head = output.header("compare", **_meta(cfg, max_rel_err=output.fmt(worst),
                                            tol=output.fmt(cfg.tolerance),
                                            closed_form_singular=skipped))
    status = EXIT_OK if errs and worst <= cfg.tolerance else EXIT_FAIL
    return output.compare_table(records, head), status


def do_symmetry(cfg: RunConfig) -> tuple[str, int]:
    g = cfg.grid
    sym = classify_symmetry(sweep(cfg.resolved_network(), g), cfg.tolerance)
    head = output.header("symmetry", **_meta(cfg, grid=f"{g.start!r},{g.stop!r},{g.points}"))
    return f"{head}\nsymmetry={sym.value}\n", EXIT_OK


def do_scan(cfg: RunConfig) -> tuple[str, int]:
    _need_device(cfg, "scan")
    if cfg.scan is None:
        raise SchemaError("no 'scan' block in the configuration", "scan")
    p, s = cfg.params, cfg.scan
    data = isolator_loss_scan(p.j_a, p.j_b, p.kappas(2)[0], p.gamma_e, s.j_ab, s.gamma_c, s.omega)
    head = output.header("scan", **_meta(cfg, omega=output.fmt(s.omega)))
    return output.scan_table(s.j_ab, s.gamma_c, data, head), EXIT_OK


def do_device(cfg: RunConfig) -> tuple[str, int]:
    doc = {"name": cfg.name, "network": network_to_dict(cfg.resolved_network())}
    return json.dumps(doc, indent=2) + "\n", EXIT_OK


COMMANDS = {
    "sweep": do_sweep,
    "check": do_check,
    "compare": do_compare,
    "symmetry": do_symmetry,
    "scan": do_scan,
    "device": do_device,
}
OUTPUT_COMMAND = {"spectrum": "sweep", "conditions": "check", "compare": "compare",
                  "symmetry": "symmetry", "scan": "scan"}
SUFFIX = {"sweep": "csv", "compare": "csv", "scan": "csv", "check": "txt", "symmetry": "txt"}


def run(cfg: RunConfig, command: str = "run", out: str | None = None) -> int:
    """Execute ``command`` (or every requested output for ``"run"``) and write results."""
    out = out or cfg.out
    if command != "run":
        text, status = COMMANDS[command](cfg)
        _emit(text, Path(out) if out else None)
        return status

    status = EXIT_OK
    for name in cfg.outputs:
        cmd = OUTPUT_COMMAND[name]
        text, st = COMMANDS[cmd](cfg)
        status = max(status, st)
        if out:
            stem = cfg.name or "run"
            _emit(text, Path(out) / f"{stem}_{name}.{SUFFIX[cmd]}")
        else:
            _emit(text, None)
    return status


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonreciprocal",
        description="Scattering spectra, optimality checks and closed-form comparisons "
                    "for nonreciprocal coupled-mode devices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["run"]:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True,
                       help="JSON config path or shipped config name")
        p.add_argument("--out", help="output file ('run': output directory); default stdout")
        p.add_argument("--grid", help="frequency grid override as start,stop,points")
        p.add_argument("--tol", type=float, help="relative tolerance override")
        p.add_argument("--lenient", action="store_true",
                       help="ignore unknown config fields instead of failing")
    sub.add_parser("list", help="list shipped configurations")
    return parser


def _bind_grid(argv: list[str]) -> list[str]:
    # "--grid -1,1,5" would otherwise be read as an unknown option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--grid" and i + 1 < len(argv):
            out.append(f"--grid={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_bind_grid(argv))
    if args.command == "list":
        print("\n".join(shipped_configs()))
        return EXIT_OK
    try:
        cfg = load_config(args.config, strict=not args.lenient)
        if args.grid:
            cfg = dataclasses.replace(cfg, grid=parse_grid_flag(args.grid))
        if args.tol is not None:
            cfg = dataclasses.replace(cfg, tolerance=args.tol)
        return run(cfg, args.command, args.out)
    except (NonreciprocalError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
