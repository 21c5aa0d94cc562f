"""Minimal deterministic SVG line charts.

Hand-emitted SVG keeps chart output byte-stable across runs and hosts;
the CSV next to each chart is the canonical data. Good enough for
eyeballing trends, nothing more.
"""

from __future__ import annotations

from typing import Sequence

WIDTH = 720
HEIGHT = 480
MARGIN_LEFT = 70
MARGIN_RIGHT = 30
MARGIN_TOP = 50
MARGIN_BOTTOM = 60

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")

Series = tuple[str, Sequence[float], Sequence[float]]


def _span(values: Sequence[float]) -> tuple[float, float]:
    lo = min(values)
    hi = max(values)
    if lo == hi:
        lo -= 1.0
        hi += 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def render_line_chart(title: str, x_label: str, y_label: str,
                      series: Sequence[Series]) -> str:
    """Render labelled line series to an SVG document string."""
    if not series:
        raise ValueError("at least one series is required")
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if not xs_all:
        raise ValueError("series must contain points")
    x_lo, x_hi = _span(xs_all)
    y_lo, y_hi = _span(ys_all)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    out = []
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
               f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">')
    out.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
    out.append(f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" '
               f'font-family="sans-serif" font-size="16">{title}</text>')

    for tick in _ticks(y_lo, y_hi):
        y = py(tick)
        out.append(f'<line x1="{MARGIN_LEFT}" y1="{y:.2f}" '
                   f'x2="{WIDTH - MARGIN_RIGHT}" y2="{y:.2f}" '
                   f'stroke="#dddddd" stroke-width="1"/>')
        out.append(f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.2f}" '
                   f'text-anchor="end" font-family="sans-serif" '
                   f'font-size="11">{tick:g}</text>')
    for tick in _ticks(x_lo, x_hi):
        x = px(tick)
        out.append(f'<line x1="{x:.2f}" y1="{MARGIN_TOP}" x2="{x:.2f}" '
                   f'y2="{HEIGHT - MARGIN_BOTTOM}" stroke="#dddddd" '
                   f'stroke-width="1"/>')
        out.append(f'<text x="{x:.2f}" y="{HEIGHT - MARGIN_BOTTOM + 18}" '
                   f'text-anchor="middle" font-family="sans-serif" '
                   f'font-size="11">{tick:g}</text>')

    out.append(f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" '
               f'height="{plot_h}" fill="none" stroke="#333333"/>')
    out.append(f'<text x="{MARGIN_LEFT + plot_w / 2:.1f}" y="{HEIGHT - 16}" '
               f'text-anchor="middle" font-family="sans-serif" '
               f'font-size="13">{x_label}</text>')
    out.append(f'<text x="20" y="{MARGIN_TOP + plot_h / 2:.1f}" '
               f'text-anchor="middle" font-family="sans-serif" font-size="13" '
               f'transform="rotate(-90 20 {MARGIN_TOP + plot_h / 2:.1f})">'
               f'{y_label}</text>')

    for idx, (label, xs, ys) in enumerate(series):
        color = COLORS[idx % len(COLORS)]
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline points="{points}" fill="none" '
                   f'stroke="{color}" stroke-width="2"/>')
        for x, y in zip(xs, ys):
            out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" '
                       f'fill="{color}"/>')
        ly = MARGIN_TOP + 14 + 16 * idx
        lx = WIDTH - MARGIN_RIGHT - 150
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" '
                   f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{ly}" font-family="sans-serif" '
                   f'font-size="12">{label}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_line_chart(path, title: str, x_label: str, y_label: str,
                     series: Sequence[Series]) -> None:
    svg = render_line_chart(title, x_label, y_label, series)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
