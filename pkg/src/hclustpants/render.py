"""SVG drawings of hierarchies and pants curves."""

from __future__ import annotations

import numpy as np

from .geometry import hull_indices

CANVAS = 800.0
MARGIN = 40.0


def _fmt(v: float) -> str:
    return f"{round(float(v), 6):.6f}"


class _Frame:
    """Fixed affine map from data coordinates to the canvas (y up)."""

    def __init__(self, coords: np.ndarray):
        lo = coords.min(axis=0)
        hi = coords.max(axis=0)
        span = float(max(hi[0] - lo[0], hi[1] - lo[1])) or 1.0
        self.scale = (CANVAS - 2 * MARGIN) / span
        self.lo = lo

    def __call__(self, x: float, y: float) -> tuple[str, str]:
        cx = MARGIN + (x - self.lo[0]) * self.scale
        cy = CANVAS - MARGIN - (y - self.lo[1]) * self.scale
        return _fmt(cx), _fmt(cy)


def render_svg(points, clusters=(), curves=(), *, disk: bool = False) -> str:
    """Sites, cluster hulls and closed curves on separate ``<g>`` layers."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    extent = [pts]
    extent.extend(np.asarray(c, dtype=float) for c in curves)
    if disk:
        extent.append(np.array([[-1.0, -1.0], [1.0, 1.0]]))
    frame = _Frame(np.vstack(extent))
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(CANVAS)}" height="{int(CANVAS)}" '
        f'viewBox="0 0 {int(CANVAS)} {int(CANVAS)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if disk:
        cx, cy = frame(0.0, 0.0)
        lines.append(
            f'<circle id="boundary" cx="{cx}" cy="{cy}" r="{_fmt(frame.scale)}" fill="none" stroke="#999999"/>'
        )
    lines.append('<g id="hulls" fill="none" stroke="#3366cc" stroke-width="1">')
    for cluster in clusters:
        sub = pts[list(cluster)]
        hull = sub[hull_indices(sub)]
        coords = " ".join(",".join(frame(x, y)) for x, y in hull)
        lines.append(f'<polygon points="{coords}"/>')
    lines.append("</g>")
    lines.append('<g id="curves" fill="none" stroke="#cc3333" stroke-width="1.5">')
    for curve in curves:
        c = np.asarray(curve, dtype=float)
        head = "M " + " ".join(frame(*c[0]))
        tail = " ".join("L " + " ".join(frame(x, y)) for x, y in c[1:])
        lines.append(f'<path d="{head} {tail} Z"/>')
    lines.append("</g>")
    lines.append('<g id="sites" fill="black">')
    for i, (x, y) in enumerate(pts):
        cx, cy = frame(x, y)
        lines.append(f'<circle id="site-{i}" cx="{cx}" cy="{cy}" r="3"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
