"""SVG output for straight-line drawings."""

from __future__ import annotations

import colorsys
import math

from .model import Drawing


def _n(x: float) -> str:
    x = float(format(x, ".12g"))
    return format(0.0 if x == 0 else x, ".12g")


def render_svg(
    drawing: Drawing,
    zone_of: list[int] | tuple[int, ...] | None = None,
    zone_theta: dict[int, float] | None = None,
    stroke: str = "#222",
    size: float = 600.0,
) -> str:
    """Edges as stroked lines inside a viewBox padded by 5% of the larger extent.

    The y axis is flipped inside the bounding box so the picture keeps the
    mathematical orientation.  With ``zone_of`` and ``zone_theta`` each edge is
    coloured by its zone direction modulo pi.
    """
    xs = [p[0] for p in drawing.vertices.values()]
    ys = [p[1] for p in drawing.vertices.values()]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    extent = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.05 * extent
    vb = (x0 - pad, y0 - pad, x1 - x0 + 2 * pad, y1 - y0 + 2 * pad)
    width = size
    height = size * vb[3] / vb[2]
    sw = extent / 300.0
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_n(width)}" height="{_n(height)}" '
        f'viewBox="{" ".join(_n(v) for v in vb)}">',
        f'<g stroke="{stroke}" stroke-width="{_n(sw)}" stroke-linecap="round" fill="none">',
    ]
    for e, (u, v) in enumerate(drawing.edges):
        (ax, ay), (bx, by) = drawing.vertices[u], drawing.vertices[v]
        attr = ""
        if zone_of is not None and zone_theta is not None:
            hue = (zone_theta[zone_of[e]] % math.pi) / math.pi
            r, g, b = colorsys.hsv_to_rgb(hue, 0.85, 0.8)
            attr = f' stroke="#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"'
        lines.append(
            f'<line x1="{_n(ax)}" y1="{_n(y0 + y1 - ay)}" x2="{_n(bx)}" y2="{_n(y0 + y1 - by)}"{attr}/>'
        )
    lines += ["</g>", "</svg>", ""]
    return "\n".join(lines)
