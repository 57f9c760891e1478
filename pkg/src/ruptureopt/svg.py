"""Standalone SVG panels of a 2-joint torque polytope and its inscribed circle."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

PX_PER_NM = 40.0


def panel_extent(vertices, tau_g) -> float:
    """Half-width in Nm that fits ``vertices`` around ``tau_g`` with some margin."""
    v = np.asarray(vertices, dtype=float).reshape(-1, 2)
    reach = float(np.abs(v - np.asarray(tau_g, dtype=float)).max()) if len(v) else 0.0
    return float(max(1, math.ceil(1.1 * reach)))


def _n(x: float) -> str:
    return f"{x:.2f}"


def render_panel(vertices, tau_g, radius: float, included: bool, half_extent: float,
                 title: str = "", scale: float = PX_PER_NM) -> str:
    """One panel: red torque-space boundary, blue circle, center cross, badge.

    The view is centered on ``tau_g`` and spans ``2 * half_extent`` Nm on
    each axis, so panels sharing an extent are directly comparable.
    """
    tx, ty = (float(t) for t in tau_g)
    size = 2.0 * half_extent * scale
    mid = size / 2.0

    def px(x, y):
        return mid + (x - tx) * scale, mid - (y - ty) * scale

    pts = " ".join(f"{_n(a)},{_n(b)}" for a, b in (px(x, y) for x, y in np.asarray(vertices).reshape(-1, 2)))
    ox, oy = px(0.0, 0.0)
    arm = 0.02 * size
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_n(size)}" height="{_n(size)}" '
        f'viewBox="0 0 {_n(size)} {_n(size)}">',
        f"  <title>{escape(title)}</title>",
        f'  <rect x="0" y="0" width="{_n(size)}" height="{_n(size)}" fill="white"/>',
        f'  <line x1="0" y1="{_n(oy)}" x2="{_n(size)}" y2="{_n(oy)}" stroke="#bbbbbb" stroke-width="1"/>',
        f'  <line x1="{_n(ox)}" y1="0" x2="{_n(ox)}" y2="{_n(size)}" stroke="#bbbbbb" stroke-width="1"/>',
        f'  <polygon points="{pts}" fill="none" stroke="red" stroke-width="2"/>',
    ]
    if radius > 0:
        lines.append(f'  <circle cx="{_n(mid)}" cy="{_n(mid)}" r="{_n(radius * scale)}" '
                     f'fill="none" stroke="blue" stroke-width="2"/>')
    lines.append(f'  <path d="M {_n(mid - arm)} {_n(mid)} L {_n(mid + arm)} {_n(mid)} '
                 f'M {_n(mid)} {_n(mid - arm)} L {_n(mid)} {_n(mid + arm)}" stroke="black" stroke-width="2"/>')
    b = 0.06 * size
    bx, by = size - 1.5 * b, 0.5 * b
    if included:
        mark = f"M {_n(bx)} {_n(by + 0.5 * b)} L {_n(bx + 0.4 * b)} {_n(by + b)} L {_n(bx + b)} {_n(by)}"
        color, label = "green", "included"
    else:
        mark = f"M {_n(bx)} {_n(by)} L {_n(bx + b)} {_n(by + b)} M {_n(bx + b)} {_n(by)} L {_n(bx)} {_n(by + b)}"
        color, label = "red", "excluded"
    lines += [
        f'  <g class="badge {label}">',
        f'    <path d="{mark}" fill="none" stroke="{color}" stroke-width="3"/>',
        f'    <text x="{_n(bx + b)}" y="{_n(by + 1.8 * b)}" font-size="{_n(0.5 * b)}" '
        f'text-anchor="end" fill="{color}">{label}</text>',
        "  </g>",
        f'  <text x="{_n(0.02 * size)}" y="{_n(0.05 * size)}" font-size="{_n(0.03 * size)}">'
        f"{escape(title)} r={radius:.6g}</text>",
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
