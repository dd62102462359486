"""Dependency-free SVG bar chart of metric means with standard-error whiskers."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c")


def bar_chart_svg(
    groups: Sequence[str],
    series: Sequence[str],
    means: Sequence[Sequence[float]],
    errors: Sequence[Sequence[float | None]],
    title: str = "",
    width: int = 720,
    height: int = 360,
) -> str:
    """``means[s][g]`` is the bar of series ``s`` in group ``g``; one panel, shared y axis."""
    left, right, top, bottom = 60, 20, 40, 60
    plot_w, plot_h = width - left - right, height - top - bottom
    hi = max([m + (e or 0.0) for row_m, row_e in zip(means, errors) for m, e in zip(row_m, row_e)] + [1e-12])
    hi *= 1.1

    def y(v: float) -> float:
        return top + plot_h * (1.0 - v / hi)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" y2="{top + plot_h}" stroke="black"/>')
    for k in range(5):
        v = hi * k / 4
        out.append(f'<text x="{left - 6}" y="{y(v) + 4:.1f}" text-anchor="end">{v:.3g}</text>')
        out.append(f'<line x1="{left}" y1="{y(v):.1f}" x2="{left + plot_w}" y2="{y(v):.1f}" stroke="#ddd"/>')
    n_g, n_s = max(len(groups), 1), max(len(series), 1)
    gw = plot_w / n_g
    bw = 0.8 * gw / n_s
    for g, gname in enumerate(groups):
        x0 = left + g * gw + 0.1 * gw
        for s in range(len(series)):
            m, e = means[s][g], errors[s][g]
            x = x0 + s * bw
            colour = PALETTE[s % len(PALETTE)]
            out.append(f'<rect x="{x:.1f}" y="{y(m):.1f}" width="{bw * 0.9:.1f}" '
                       f'height="{y(0) - y(m):.1f}" fill="{colour}"/>')
            if e:
                cx = x + bw * 0.45
                out.append(f'<line x1="{cx:.1f}" y1="{y(m + e):.1f}" x2="{cx:.1f}" y2="{y(max(m - e, 0)):.1f}" stroke="black"/>')
                for v in (m + e, max(m - e, 0)):
                    out.append(f'<line x1="{cx - 4:.1f}" y1="{y(v):.1f}" x2="{cx + 4:.1f}" y2="{y(v):.1f}" stroke="black"/>')
        out.append(f'<text x="{left + (g + 0.5) * gw:.1f}" y="{top + plot_h + 18}" text-anchor="middle">{escape(gname)}</text>')
    for s, sname in enumerate(series):
        lx = left + 10 + s * 140
        out.append(f'<rect x="{lx}" y="{height - 22}" width="12" height="12" fill="{PALETTE[s % len(PALETTE)]}"/>')
        out.append(f'<text x="{lx + 16}" y="{height - 12}">{escape(sname)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
