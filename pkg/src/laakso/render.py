"""Static SVG rendering of paths in attractor-by-height coordinates."""

from __future__ import annotations

from .fractal import value
from .geodesic import Jump, PathRep, Segment
from .numeric import Interval
from .space import Space

_SIZE = 720
_MARGIN = 48


def _x(coord: float) -> float:
    return _MARGIN + coord * (_SIZE - 2 * _MARGIN)


def _y(height: float) -> float:
    return _SIZE - _MARGIN - height * (_SIZE - 2 * _MARGIN)


def _horizontal(space: Space, address) -> float:
    coord = value(address, space.scale)
    if isinstance(coord, Interval):
        return float(coord.midpoint)
    return float(coord)


def path_svg(space: Space, path: PathRep) -> str:
    """Vertical runs as solid strokes, identification jumps dashed."""
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_SIZE - 2 * _MARGIN}" '
        f'height="{_SIZE - 2 * _MARGIN}" fill="none" stroke="#ccc"/>',
    ]
    for element in path.items + path.post:
        if isinstance(element, Segment):
            x = _x(_horizontal(space, element.address))
            parts.append(
                f'<line x1="{x:.2f}" y1="{_y(float(element.h_start)):.2f}" '
                f'x2="{x:.2f}" y2="{_y(float(element.h_end)):.2f}" '
                f'stroke="#1f5fa8" stroke-width="2.5"/>'
            )
        elif isinstance(element, Jump):
            y = _y(float(element.height))
            x1 = _x(_horizontal(space, element.from_address))
            x2 = _x(_horizontal(space, element.to_address))
            parts.append(
                f'<line x1="{x1:.2f}" y1="{y:.2f}" x2="{x2:.2f}" y2="{y:.2f}" '
                f'stroke="#c2452d" stroke-width="1.5" stroke-dasharray="6 4"/>'
            )
    if path.tail is not None:
        omega = path.tail.omega
        level = float(omega.midpoint) if isinstance(omega, Interval) else float(omega)
        x = _x(_horizontal(space, path.end.address))
        parts.append(
            f'<circle cx="{x:.2f}" cy="{_y(level):.2f}" r="4" fill="none" '
            f'stroke="#666" stroke-width="1.5"/>'
        )
    for point, colour in ((path.start, "#1a7f37"), (path.end, "#7a1fa2")):
        x = _x(_horizontal(space, point.address))
        parts.append(
            f'<circle cx="{x:.2f}" cy="{_y(float(point.height)):.2f}" r="4" fill="{colour}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
