"""Minimal self-contained SVG line charts.

The CSV outputs are authoritative; these charts are a dependency-free
convenience rendering (axes, optional log scales, legend).  Output is
deterministic: same data, byte-identical markup.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import MaterialError

_WIDTH, _HEIGHT = 720, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 160, 40, 55
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _ticks(lo: float, hi: float, log: bool) -> list[float]:
    if log:
        lo_exp = math.floor(math.log10(lo))
        hi_exp = math.ceil(math.log10(hi))
        return [10.0 ** e for e in range(int(lo_exp), int(hi_exp) + 1)
                if lo <= 10.0 ** e <= hi] or [lo, hi]
    span = hi - lo
    step = 10.0 ** math.floor(math.log10(span / 4.0))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if span / (step * mult) <= 6:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    ticks, t = [], first
    while t <= hi + 1e-12 * span:
        ticks.append(t)
        t += step
    return ticks


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def line_chart(series: Sequence[tuple[Sequence[float], Sequence[float], str]],
               xlabel: str, ylabel: str, title: str,
               logx: bool = False, logy: bool = False) -> str:
    """Render labelled (x, y) series to an SVG document string."""
    if not series:
        raise MaterialError("nothing to plot")
    xs = [x for s in series for x in s[0]]
    ys = [y for s in series for y in s[1]]
    if logx and min(xs) <= 0.0:
        raise MaterialError("log x axis needs positive values")
    if logy:
        ys = [y for y in ys if y > 0.0]
        if not ys:
            raise MaterialError("log y axis needs positive values")
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def tx(x: float) -> float:
        if logx:
            frac = (math.log10(x) - math.log10(x_lo)) / (math.log10(x_hi) - math.log10(x_lo))
        else:
            frac = (x - x_lo) / (x_hi - x_lo)
        return _MARGIN_L + frac * (_WIDTH - _MARGIN_L - _MARGIN_R)

    def ty(y: float) -> float:
        if logy:
            frac = (math.log10(y) - math.log10(y_lo)) / (math.log10(y_hi) - math.log10(y_lo))
        else:
            frac = (y - y_lo) / (y_hi - y_lo)
        return _HEIGHT - _MARGIN_B - frac * (_HEIGHT - _MARGIN_T - _MARGIN_B)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    axis_box = (f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" '
                f'width="{_WIDTH - _MARGIN_L - _MARGIN_R}" '
                f'height="{_HEIGHT - _MARGIN_T - _MARGIN_B}" '
                f'fill="none" stroke="black" stroke-width="1"/>')
    parts.append(axis_box)
    for t in _ticks(x_lo, x_hi, logx):
        px = tx(t)
        parts.append(f'<line x1="{px:.1f}" y1="{_HEIGHT - _MARGIN_B}" '
                     f'x2="{px:.1f}" y2="{_HEIGHT - _MARGIN_B + 5}" stroke="black"/>')
        parts.append(f'<text x="{px:.1f}" y="{_HEIGHT - _MARGIN_B + 18}" '
                     f'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="11">{_fmt(t)}</text>')
    for t in _ticks(y_lo, y_hi, logy):
        py = ty(t)
        parts.append(f'<line x1="{_MARGIN_L - 5}" y1="{py:.1f}" '
                     f'x2="{_MARGIN_L}" y2="{py:.1f}" stroke="black"/>')
        parts.append(f'<text x="{_MARGIN_L - 8}" y="{py + 4:.1f}" '
                     f'text-anchor="end" font-family="sans-serif" '
                     f'font-size="11">{_fmt(t)}</text>')
    parts.append(f'<text x="{(_MARGIN_L + _WIDTH - _MARGIN_R) // 2}" '
                 f'y="{_HEIGHT - 12}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="13">{xlabel}</text>')
    parts.append(f'<text x="18" y="{(_MARGIN_T + _HEIGHT - _MARGIN_B) // 2}" '
                 f'text-anchor="middle" font-family="sans-serif" font-size="13" '
                 f'transform="rotate(-90 18 {(_MARGIN_T + _HEIGHT - _MARGIN_B) // 2})">'
                 f'{ylabel}</text>')
    for i, (x_data, y_data, label) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        points = " ".join(
            f"{tx(float(x)):.2f},{ty(float(y)):.2f}"
            for x, y in zip(x_data, y_data)
            if not (logy and float(y) <= 0.0)
        )
        parts.append(f'<polyline points="{points}" fill="none" '
                     f'stroke="{color}" stroke-width="1.8"/>')
        ly = _MARGIN_T + 16 + 18 * i
        lx = _WIDTH - _MARGIN_R + 10
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
                     f'font-size="12">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
