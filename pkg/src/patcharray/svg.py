"""Minimal deterministic SVG line plots for S11 sweeps and pattern cuts."""
from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .media import GHZ, InvalidInputError

WIDTH, HEIGHT = 640, 400
MARGIN = dict(left=70, right=20, top=40, bottom=55)


@dataclass(frozen=True)
class PlotStyle:
    title: str = ""
    x_label: str = ""
    y_label: str = "dB"
    stroke: str = "#1f4e9c"
    y_min: float | None = None
    y_max: float | None = None


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    span = hi - lo
    raw = span / max(n - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    first = math.ceil(lo / step) * step
    out = []
    k = 0
    while first + k * step <= hi + 1e-9 * span:
        out.append(round(first + k * step, 10))
        k += 1
    return out


def render_line_plot(x, y, style: PlotStyle) -> str:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size == 0 or x.size != y.size:
        raise InvalidInputError("plot needs equal-length, non-empty x and y")
    x_lo, x_hi = float(x.min()), float(x.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    y_lo = float(y.min()) if style.y_min is None else style.y_min
    y_hi = float(y.max()) if style.y_max is None else style.y_max
    if y_hi - y_lo < 1e-9:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(v):
        return MARGIN["left"] + (v - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        v = min(max(v, y_lo), y_hi)
        return MARGIN["top"] + (y_hi - v) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        f'<g font-family="sans-serif" font-size="12" fill="black">',
    ]
    for tx in _ticks(x_lo, x_hi):
        out.append(
            f'<line x1="{px(tx):.2f}" y1="{MARGIN["top"]}" x2="{px(tx):.2f}" '
            f'y2="{HEIGHT - MARGIN["bottom"]}" stroke="#dddddd"/>'
        )
        out.append(
            f'<text x="{px(tx):.2f}" y="{HEIGHT - MARGIN["bottom"] + 16}" '
            f'text-anchor="middle">{tx:g}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        out.append(
            f'<line x1="{MARGIN["left"]}" y1="{py(ty):.2f}" x2="{WIDTH - MARGIN["right"]}" '
            f'y2="{py(ty):.2f}" stroke="#dddddd"/>'
        )
        out.append(
            f'<text x="{MARGIN["left"] - 6}" y="{py(ty) + 4:.2f}" text-anchor="end">{ty:g}</text>'
        )
    out.append(
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>'
    )
    pts = " ".join(f"{px(a):.3f},{py(b):.3f}" for a, b in zip(x, y))
    out.append(f'<polyline fill="none" stroke="{style.stroke}" stroke-width="1.5" points="{pts}"/>')
    out.append(
        f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 12}" '
        f'text-anchor="middle">{escape(style.x_label)}</text>'
    )
    out.append(
        f'<text x="18" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN["top"] + ph / 2:.1f})">{escape(style.y_label)}</text>'
    )
    if style.title:
        out.append(
            f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="14">'
            f"{escape(style.title)}</text>"
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_sweep_svg(sweep, title: str = "S11") -> str:
    if sweep is None or len(sweep.frequencies) == 0:
        raise InvalidInputError("empty sweep")
    db = sweep.s11_db
    # keep the matched-point floor from flattening the rest of the curve
    finite = db[db > -199.0]
    y_min = max(float(finite.min()) if finite.size else -60.0, -80.0)
    style = PlotStyle(
        title=title,
        x_label="Frequency (GHz)",
        y_label="|S11| (dB)",
        y_min=math.floor(y_min / 5) * 5,
        y_max=0.0,
    )
    return render_line_plot(sweep.frequencies / GHZ, db, style)


def render_cut_svg(angles_deg, level_db, title: str = "", floor_db: float = -40.0) -> str:
    style = PlotStyle(
        title=title, x_label="Angle (deg)", y_label="Level (dB)", y_min=floor_db, y_max=0.0
    )
    return render_line_plot(angles_deg, level_db, style)
