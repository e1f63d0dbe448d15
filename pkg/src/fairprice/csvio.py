"""Deterministic CSV/SVG emission and row building.

All unit conversion (percent, annualization) happens here, exactly once:
core modules work in quarterly log units, rows carry reporting units.
Floats are formatted with 12 significant digits and a '.' separator so
identical inputs produce byte-identical files.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

from .nklinear import IRFSeries, ShockKind


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return format(x, ".12g")
    return str(x)


def provenance_lines(command_line: str, version: str,
                     params: Mapping[str, tuple[object, str]]) -> list[str]:
    """'#'-prefixed header lines: command, parameter echo with source, version."""
    lines = [f"# command: {command_line}", f"# artifact-version: {version}"]
    for name in sorted(params):
        value, source = params[name]
        lines.append(f"# param {name} = {fmt(value)} [{source}]")
    return lines


def write_csv(path: str, columns: Sequence[str],
              rows: Iterable[Sequence[object]],
              header_lines: Sequence[str] = ()) -> None:
    out = []
    out.extend(header_lines)
    out.append(",".join(columns))
    for row in rows:
        out.append(",".join(fmt(v) for v in row))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")


def irf_columns(shock_kind: ShockKind) -> list[str]:
    shock_col = "i0_hat_annual" if shock_kind is ShockKind.MONETARY else "a_hat"
    return ["t", shock_col, "pi_hat_annual", "i_hat_annual", "m_p_hat",
            "m_hat", "n_hat", "y_hat", "real_wage_hat", "model"]


def irf_rows(series: IRFSeries) -> list[list[object]]:
    """Reporting units: rates in annualized percentage points (x400), other
    deviations in percent (x100)."""
    rate_scale = 400.0
    pct = 100.0
    rows = []
    for j in range(len(series.t)):
        shock_val = (series.shock[j] * rate_scale
                     if series.shock_kind is ShockKind.MONETARY
                     else series.shock[j] * pct)
        rows.append([
            int(series.t[j]),
            float(shock_val),
            float(series.pi_hat[j] * rate_scale),
            float(series.i_hat[j] * rate_scale),
            float(series.m_p_hat[j] * pct),
            float(series.m_hat[j] * pct),
            float(series.n_hat[j] * pct),
            float(series.y_hat[j] * pct),
            float(series.real_wage_hat[j] * pct),
            series.model_tag,
        ])
    return rows


def write_svg(path: str, x: Sequence[float], series: Mapping[str, Sequence[float]],
              title: str) -> None:
    """Minimal self-contained SVG line chart, one polyline per series."""
    width, height, pad = 640, 400, 48
    xs = [float(v) for v in x]
    all_y = [float(v) for ys in series.values() for v in ys]
    if not xs or not all_y:
        raise ValueError("nothing to plot")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(all_y), max(all_y)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def sx(v: float) -> float:
        return pad + (v - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(v: float) -> float:
        return height - pad - (v - y0) / (y1 - y0) * (height - 2 * pad)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
              "#8c564b", "#e377c2", "#7f7f7f"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.6g}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
    ]
    if y0 < 0 < y1:
        zy = sy(0.0)
        parts.append(
            f'<line x1="{pad}" y1="{zy:.6g}" x2="{width - pad}" '
            f'y2="{zy:.6g}" stroke="#cccccc"/>'
        )
    for i, (name, ys) in enumerate(series.items()):
        pts = " ".join(f"{sx(xv):.6g},{sy(float(yv)):.6g}"
                       for xv, yv in zip(xs, ys))
        color = colors[i % len(colors)]
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{width - pad + 4}" y="{pad + 16 * i}" '
            f'font-family="sans-serif" font-size="11" fill="{color}" '
            f'text-anchor="start">{name}</text>'
        )
    # axis labels at the extremes
    parts.append(
        f'<text x="{pad}" y="{height - pad + 16}" font-family="sans-serif" '
        f'font-size="11">{fmt(x0)}</text>'
    )
    parts.append(
        f'<text x="{width - pad}" y="{height - pad + 16}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{fmt(x1)}</text>'
    )
    parts.append(
        f'<text x="4" y="{sy(y1):.6g}" font-family="sans-serif" '
        f'font-size="11">{fmt(y1)}</text>'
    )
    parts.append(
        f'<text x="4" y="{sy(y0):.6g}" font-family="sans-serif" '
        f'font-size="11">{fmt(y0)}</text>'
    )
    parts.append("</svg>")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
