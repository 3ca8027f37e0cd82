"""
SVG pictures of cones: three-dimensional ones cut by the plane ``{s . x = -1}``,
two-dimensional ones drawn directly.

Cones are clipped in the plane from their H-representation, so unbounded
slices (lineality, rays with ``s . r >= 0``) still draw.  Floating point is
used only for screen coordinates; every label prints exact values.

>>> from zipcone.polycone import cone_from_generators
>>> c = cone_from_generators([(-1, 0, 0), (0, -1, 0), (0, 0, -1)])
>>> svg = render([Layer("octant", c, fill="#ddd")])
>>> svg.startswith("<svg") and "octant" in svg
True
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .polycone import Cone

__all__ = ["Layer", "Marker", "render", "slice_point", "off_slice"]

WIDTH = 640
HEIGHT = 560
MARGIN = 40


@dataclass(frozen=True)
class Layer:
    label: str
    cone: Cone
    fill: str = "none"
    stroke: str = "#000"
    width: float = 1.0
    dash: str = ""


@dataclass(frozen=True)
class Marker:
    label: str
    point: tuple
    color: str = "#c00"


@dataclass
class _Frame:
    s: tuple[Fraction, ...]
    u: tuple[float, ...]
    v: tuple[float, ...]
    base: tuple[float, ...] = field(default=())


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _planar_frame() -> _Frame:
    return _Frame((), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0))


def _frame(s: Sequence) -> _Frame:
    s = tuple(Fraction(x) for x in s)
    if len(s) != 3 or not any(s):
        raise ValueError("the slice functional must be a nonzero vector of length 3")
    # two vectors spanning s-perp, orthogonalised exactly then normalised for drawing
    candidates = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    basis: list[tuple[Fraction, ...]] = []
    for c in candidates:
        v = [Fraction(x) for x in c]
        for b in [s] + basis:
            coef = _dot(v, b) / _dot(b, b)
            v = [x - coef * y for x, y in zip(v, b)]
        if any(v):
            basis.append(tuple(v))
        if len(basis) == 2:
            break
    u, v = basis
    nu, nv = float(_dot(u, u)) ** 0.5, float(_dot(v, v)) ** 0.5
    ss = _dot(s, s)
    base = tuple(float(-x / ss) for x in s)
    return _Frame(s, tuple(float(x) / nu for x in u), tuple(float(x) / nv for x in v), base)


def slice_point(s: Sequence, ray: Sequence) -> tuple[Fraction, ...] | None:
    """Exact point where the ray meets ``{s . x = -1}``, or ``None``."""
    value = _dot(s, ray)
    if value >= 0:
        return None
    return tuple(Fraction(x) / -value for x in ray)


def off_slice(s: Sequence, rays: Sequence[Sequence]) -> list[tuple]:
    """Rays with ``s . r >= 0``; they do not meet the slice plane."""
    return [tuple(r) for r in rays if _dot(s, r) >= 0]


def _to_plane(frame: _Frame, x: Sequence) -> tuple[float, float]:
    d = [float(a) - b for a, b in zip(x, frame.base)]
    if not frame.s:
        return (d[0], d[1])
    return (_dot(d, frame.u), _dot(d, frame.v))


def _clip(poly: list[tuple[float, float]], a: float, b: float, c: float) -> list[tuple[float, float]]:
    """Keep the part of ``poly`` with ``a x + b y + c <= 0``."""
    out = []
    for i, p in enumerate(poly):
        q = poly[(i + 1) % len(poly)]
        fp = a * p[0] + b * p[1] + c
        fq = a * q[0] + b * q[1] + c
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _slice_polygon(frame: _Frame, cone: Cone, box: float) -> list[tuple[float, float]]:
    poly = [(-box, -box), (box, -box), (box, box), (-box, box)]
    for h in cone.facets:
        # h.normal . (base + x u + y v) <= 0
        a = _dot(h.normal, frame.u)
        b = _dot(h.normal, frame.v)
        c = _dot([float(x) for x in h.normal], frame.base)
        poly = _clip(poly, a, b, c)
        if not poly:
            return []
    if len(poly) < 3:
        return []
    return poly


def _fmt(x: Fraction) -> str:
    return str(x)


def _unit_point(ray: Sequence) -> tuple[Fraction, ...] | None:
    """Planar drawing: the ray scaled to sup-norm 1."""
    m = max((abs(Fraction(x)) for x in ray), default=0)
    return None if m == 0 else tuple(Fraction(x) / m for x in ray)


def render(layers: Sequence[Layer], markers: Sequence[Marker] = (), s: Sequence | None = (1, 1, 1),
           title: str = "") -> str:
    """SVG text for the given layers and markers.

    Three-dimensional cones are cut by ``{s . x = -1}``; with ``s=None`` the
    cones are two-dimensional and drawn directly in the plane, clipped to a box.
    """
    if s is None:
        frame = _planar_frame()
        meet = _unit_point
    else:
        frame = _frame(s)
        meet = (lambda r: slice_point(s, r))
    points = [meet(m.point) for m in markers]
    extent = 1.0
    for layer in layers:
        for r in layer.cone.rays:
            p = meet(r)
            if p is not None:
                x, y = _to_plane(frame, p)
                extent = max(extent, abs(x), abs(y))
    for p in points:
        if p is not None:
            x, y = _to_plane(frame, p)
            extent = max(extent, abs(x), abs(y))
    box = extent * 1.15
    scale = min(WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN - 40) / (2 * box)

    def screen(pt: tuple[float, float]) -> tuple[float, float]:
        return (WIDTH / 2 + pt[0] * scale, (HEIGHT + 40) / 2 - pt[1] * scale)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}">']
    if s is None:
        out.append("<desc>planar cones, rays drawn at sup-norm 1</desc>")
        ox, oy = screen((0.0, 0.0))
        out.append(f'<line x1="{MARGIN}" y1="{oy:.3f}" x2="{WIDTH - MARGIN}" y2="{oy:.3f}" stroke="#ccc"/>')
        out.append(f'<line x1="{ox:.3f}" y1="{MARGIN + 40}" x2="{ox:.3f}" y2="{HEIGHT - MARGIN}" stroke="#ccc"/>')
    else:
        out.append(f'<desc>slice s.x = -1 with s = ({", ".join(_fmt(Fraction(x)) for x in s)})</desc>')
    if title:
        out.append(f'<text x="{MARGIN}" y="24" font-family="monospace" font-size="14">{escape(title)}</text>')
    legend_y = 44
    for layer in layers:
        poly = _slice_polygon(frame, layer.cone, box)
        if poly:
            pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(screen, poly))
            dash = f' stroke-dasharray="{layer.dash}"' if layer.dash else ""
            out.append(f'<polygon points="{pts}" fill="{layer.fill}" fill-opacity="0.5" '
                       f'stroke="{layer.stroke}" stroke-width="{layer.width}"{dash}>'
                       f'<title>{escape(layer.label)}</title></polygon>')
        out.append(f'<text x="{WIDTH - 200}" y="{legend_y}" font-family="monospace" font-size="11" '
                   f'fill="{layer.stroke}">{escape(layer.label)}</text>')
        legend_y += 14
    for m, p in zip(markers, points):
        exact = "(" + ", ".join(str(x) for x in m.point) + ")"
        if p is None:
            out.append(f"<!-- {escape(m.label)} {exact} does not meet the slice -->")
            continue
        x, y = screen(_to_plane(frame, p))
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="{m.color}"/>')
        out.append(f'<text x="{x + 5:.3f}" y="{y - 5:.3f}" font-family="monospace" font-size="11" '
                   f'fill="{m.color}">{escape(m.label)} {escape(exact)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
