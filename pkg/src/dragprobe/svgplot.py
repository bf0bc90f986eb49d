"""Minimal self-contained SVG writer: polyline plots and rect heatmaps.

Deliberately tiny (no plotting dependency); outputs are plain text and
diffable.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 70, 20, 30, 50
_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"]


def _ticks(lo: float, hi: float, n: int = 5):
    if hi == lo:
        hi = lo + 1.0
    return np.linspace(lo, hi, n)


def _axes(title: str, xlabel: str, ylabel: str, x0, x1, y0, y1) -> list[str]:
    pw, ph = _W - _ML - _MR, _H - _MT - _MB
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="18" text-anchor="middle" font-size="13">{title}</text>',
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{_ML + pw / 2}" y="{_H - 12}" text-anchor="middle">{xlabel}</text>',
        f'<text x="16" y="{_MT + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {_MT + ph / 2})">{ylabel}</text>',
    ]
    for tx in _ticks(x0, x1):
        px = _ML + (tx - x0) / (x1 - x0) * pw
        parts.append(f'<line x1="{px:.1f}" y1="{_MT + ph}" x2="{px:.1f}" y2="{_MT + ph + 4}" stroke="black"/>')
        parts.append(f'<text x="{px:.1f}" y="{_MT + ph + 16}" text-anchor="middle">{tx:g}</text>')
    for ty in _ticks(y0, y1):
        py = _MT + ph - (ty - y0) / (y1 - y0) * ph
        parts.append(f'<line x1="{_ML - 4}" y1="{py:.1f}" x2="{_ML}" y2="{py:.1f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{py + 3:.1f}" text-anchor="end">{ty:g}</text>')
    return parts


def line_plot(path: str | Path, series, title: str, xlabel: str, ylabel: str) -> None:
    """series: iterable of (x array, y array, label)."""
    series = [(np.asarray(x, float), np.asarray(y, float), label) for x, y, label in series]
    x0 = min(float(x.min()) for x, _, _ in series)
    x1 = max(float(x.max()) for x, _, _ in series)
    finite = [y[np.isfinite(y)] for _, y, _ in series]
    y0 = min((float(y.min()) for y in finite if y.size), default=0.0)
    y1 = max((float(y.max()) for y in finite if y.size), default=1.0)
    if y0 == y1:
        y0, y1 = y0 - 1.0, y1 + 1.0
    pw, ph = _W - _ML - _MR, _H - _MT - _MB
    parts = _axes(title, xlabel, ylabel, x0, x1, y0, y1)
    for k, (x, y, label) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        ok = np.isfinite(y)
        pts = " ".join(
            f"{_ML + (xi - x0) / (x1 - x0) * pw:.2f},"
            f"{_MT + ph - (yi - y0) / (y1 - y0) * ph:.2f}"
            for xi, yi in zip(x[ok], y[ok])
        )
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.2"/>')
        parts.append(
            f'<text x="{_W - _MR - 6}" y="{_MT + 14 + 14 * k}" text-anchor="end" '
            f'fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8", newline="\n")


def heatmap(path: str | Path, x, y, z, title: str, xlabel: str, ylabel: str) -> None:
    """z[i, j] over y[i] (rows) and x[j] (columns); grayscale, white=1."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    z = np.asarray(z, float)
    zmin, zmax = float(np.nanmin(z)), float(np.nanmax(z))
    if zmax == zmin:
        zmax = zmin + 1.0
    pw, ph = _W - _ML - _MR, _H - _MT - _MB
    parts = _axes(title, xlabel, ylabel, float(x.min()), float(x.max()), float(y.min()), float(y.max()))
    cw, ch = pw / z.shape[1], ph / z.shape[0]
    for i in range(z.shape[0]):
        for j in range(z.shape[1]):
            level = int(255 * (z[i, j] - zmin) / (zmax - zmin))
            px = _ML + j * cw
            py = _MT + ph - (i + 1) * ch
            parts.append(
                f'<rect x="{px:.2f}" y="{py:.2f}" width="{cw + 0.5:.2f}" height="{ch + 0.5:.2f}" '
                f'fill="rgb({level},{level},{level})"/>'
            )
    parts.append(f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8", newline="\n")
