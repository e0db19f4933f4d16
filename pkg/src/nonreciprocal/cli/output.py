"""Deterministic text tables.

Every number is written with 12 significant digits in ``%.11e`` form so a
fixed configuration always produces identical bytes.  Metadata goes on a
single leading ``#`` line, never inside the data rows.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ..analysis import Spectrum


def fmt(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x + 0.0:.11e}"


def header(command: str, **meta) -> str:
    parts = [f"# nonreciprocal {command}"]
    parts += [f"{k}={v}" for k, v in meta.items() if v not in (None, "")]
    return " ".join(parts)


def csv_table(head: str, columns: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = [head, ",".join(columns)]
    lines += [",".join(r) for r in rows]
    return "\n".join(lines) + "\n"


def spectrum_table(spec: Spectrum, head: str) -> str:
    spec = spec.sorted()
    cols = list(spec.columns())
    names = ["omega"] + [name for name, _ in cols]
    data = np.column_stack([spec.omegas] + [c for _, c in cols]) if cols else spec.omegas[:, None]
    rows = ([fmt(v) for v in row] for row in data)
    return csv_table(head, names, rows)


COMPARE_COLUMNS = ("omega", "entry", "generic_re", "generic_im", "analytic_re", "analytic_im",
                   "rel_err")


def compare_table(records: Sequence[tuple], head: str) -> str:
    rows = ([fmt(w), entry, fmt(g.real), fmt(g.imag), fmt(a.real), fmt(a.imag), fmt(err)]
            for w, entry, g, a, err in records)
    return csv_table(head, COMPARE_COLUMNS, rows)


def scan_table(j_ab: Sequence[float], gamma_c: Sequence[float], data: dict, head: str) -> str:
    names = ["gamma_c", "J_ab"] + list(data)
    rows = []
    for i, gc in enumerate(gamma_c):
        for j, jab in enumerate(j_ab):
            rows.append([fmt(gc), fmt(jab)] + [fmt(data[k][i, j]) for k in data])
    return csv_table(head, names, rows)


def condition_lines(reports, head: str) -> str:
    lines = [head]
    for i, r in enumerate(reports):
        lines.append(f"condition.{i}.name={r.name}")
        lines.append(f"condition.{i}.satisfied={'true' if r.satisfied else 'false'}")
        lines.append(f"condition.{i}.residual={fmt(r.residual)}")
        lines.append(f"condition.{i}.tolerance={fmt(r.tolerance)}")
        for k, v in r.derived.items():
            lines.append(f"condition.{i}.{k}={fmt(v)}")
    ok = all(r.satisfied for r in reports)
    lines.append(f"all_satisfied={'true' if ok else 'false'}")
    return "\n".join(lines) + "\n"
