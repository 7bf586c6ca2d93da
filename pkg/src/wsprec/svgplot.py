"""Tiny deterministic SVG line charts, no plotting dependency.

The experiment figures are plain error curves, so a hand-rolled
emitter keeps outputs byte-stable across environments: same input,
same SVG text, no timestamps or library version strings.
"""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

PALETTE = (
    "#1f5fa8",
    "#c44e52",
    "#55a868",
    "#8172b2",
    "#ccb974",
    "#64b5cd",
    "#937860",
    "#da8bc3",
)

_WIDTH = 720
_HEIGHT = 480
_MARGIN_L = 70
_MARGIN_R = 24
_MARGIN_T = 40
_MARGIN_B = 56


def _finite_points(series) -> list:
    pts = []
    for x, y in zip(series.x, series.y):
        if math.isfinite(x) and math.isfinite(y):
            pts.append((float(x), float(y)))
    return pts


def _axis_range(values) -> tuple:
    lo, hi = min(values), max(values)
    if lo == hi:
        pad = 1.0 if lo == 0 else abs(lo) * 0.1
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def _fmt(v: float) -> str:
    return format(v, ".4g")


def line_chart(series: Sequence, title: str, x_label: str, y_label: str) -> str:
    """Render labeled polylines as a standalone SVG document string."""
    drawable = [(s, _finite_points(s)) for s in series]
    drawable = [(s, pts) for s, pts in drawable if pts]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(title)}</text>',
    ]
    if not drawable:
        parts.append(
            f'<text x="{_WIDTH / 2:.1f}" y="{_HEIGHT / 2:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">no finite data</text></svg>'
        )
        return "\n".join(parts)

    xs = [x for _, pts in drawable for x, _ in pts]
    ys = [y for _, pts in drawable for _, y in pts]
    x0, x1 = _axis_range(xs)
    y0, y1 = _axis_range(ys)
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def sx(x: float) -> float:
        return _MARGIN_L + (x - x0) / (x1 - x0) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_T + plot_h - (y - y0) / (y1 - y0) * plot_h

    parts.append(
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#444" stroke-width="1"/>'
    )
    for k in range(5):
        frac = k / 4.0
        xt = x0 + frac * (x1 - x0)
        yt = y0 + frac * (y1 - y0)
        gx = sx(xt)
        gy = sy(yt)
        parts.append(
            f'<line x1="{gx:.2f}" y1="{_MARGIN_T + plot_h}" x2="{gx:.2f}" '
            f'y2="{_MARGIN_T + plot_h + 5}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{gx:.2f}" y="{_MARGIN_T + plot_h + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(xt)}</text>'
        )
        parts.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{gy:.2f}" x2="{_MARGIN_L}" y2="{gy:.2f}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 9}" y="{gy + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt(yt)}</text>'
        )
    parts.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="18" y="{_MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_MARGIN_T + plot_h / 2:.1f})">{escape(y_label)}</text>'
    )
    for idx, (s, pts) in enumerate(drawable):
        color = PALETTE[idx % len(PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.8"/>'
        )
        ly = _MARGIN_T + 14 + 16 * idx
        lx = _MARGIN_L + plot_w - 150
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{escape(s.label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def write_chart(series: Sequence, title: str, x_label: str, y_label: str, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(line_chart(series, title, x_label, y_label))
        handle.write("\n")
